#pragma once

#include "jlb/structure_tensor.hpp"

#include <vector>

namespace jlb {

// Sign convention: every adjoint matrix carries a minus sign,
//   (X_i)_j^k = -t(i,j,k)   and   (Y^k)_ij = -t(i,j,k).
// The same maps applied to dual-role constants give the dual adjoint matrices.
// All matrix-form conditions in this library assume this convention.

/// X_i for i = 0..d-1; row j, column k.
template <class T>
std::vector<BasicMatrix<T>> adjoint_x(const BasicStructureTensor<T>& t) {
  const std::size_t d = t.dim();
  std::vector<BasicMatrix<T>> xs(d, BasicMatrix<T>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) xs[i](j, k) = -t(i, j, k);
  return xs;
}

/// Y^k for k = 0..d-1; row i, column j.
template <class T>
std::vector<BasicMatrix<T>> adjoint_y(const BasicStructureTensor<T>& t) {
  const std::size_t d = t.dim();
  std::vector<BasicMatrix<T>> ys(d, BasicMatrix<T>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) ys[k](i, j) = -t(i, j, k);
  return ys;
}

/// Jacobi residual by index loops:
///   R(i,j,m,n) = t_ij^k t_km^n + t_ik^n t_mj^k + t_jk^n t_im^k.
/// All-zero iff t defines a Lie bracket.
template <class T>
Grid4<T> jacobi_residual(const BasicStructureTensor<T>& t) {
  const std::size_t d = t.dim();
  Grid4<T> r(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) {
          T s(0);
          for (std::size_t k = 0; k < d; ++k)
            s += t(i, j, k) * t(k, m, n) + t(i, k, n) * t(m, j, k) + t(j, k, n) * t(i, m, k);
          r(i, j, m, n) = s;
        }
  return r;
}

/// Same residual assembled from adjoint matrices:
///   (X^i)^j_k X^k + X^i X^j - X^j X^i, entry (m, n) stored at R(i,j,m,n).
template <class T>
Grid4<T> jacobi_residual_matrix(const BasicStructureTensor<T>& t) {
  const std::size_t d = t.dim();
  const auto xs = adjoint_x(t);
  Grid4<T> r(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      BasicMatrix<T> m = xs[i] * xs[j] - xs[j] * xs[i];
      for (std::size_t k = 0; k < d; ++k) m += xs[k] * xs[i](j, k);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) r(i, j, a, b) = m(a, b);
    }
  return r;
}

template <class T>
bool is_lie_algebra(const BasicStructureTensor<T>& t) {
  return jacobi_residual(t).is_zero();
}

}  // namespace jlb
