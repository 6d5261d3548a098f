#pragma once

#include "jlb/adjoint.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace jlb {

/// Candidate pair ((g, phi0), (g*, X0)) in a fixed dual pair of bases.
///   g      : f_ij^k
///   gstar  : dual constants, gstar(i,j,k) = coefficient of dual e^k in [e^i, e^j]
///   alpha  : X0   = alpha^i X_i
///   beta   : phi0 = beta_i  X~^i
template <class T>
struct BasicBialgebra {
  BasicStructureTensor<T> g;
  BasicStructureTensor<T> gstar;
  BasicVector<T> alpha;
  BasicVector<T> beta;

  std::size_t dim() const { return g.dim(); }

  void check_shape() const {
    const std::size_t d = g.dim();
    if (gstar.dim() != d || alpha.dim() != d || beta.dim() != d)
      throw dimension_mismatch("bialgebra components have inconsistent dimensions");
  }

  friend bool operator==(const BasicBialgebra&, const BasicBialgebra&) = default;
};

using Bialgebra = BasicBialgebra<Scalar>;

/// Exchanges the roles of (g, beta) and (g*, alpha).
template <class T>
BasicBialgebra<T> swapped(const BasicBialgebra<T>& b) {
  return {b.gstar, b.g, b.beta, b.alpha};
}

namespace detail {
template <class T>
T delta(std::size_t a, std::size_t b) {
  return a == b ? T(1) : T(0);
}
}  // namespace detail

/// Generalized mixed-Jacobi residual R(i,j,m,n) by direct index sums.
template <class T>
Grid4<T> mixed_residual(const BasicBialgebra<T>& b) {
  b.check_shape();
  const std::size_t d = b.dim();
  const auto& f = b.g;
  const auto& ft = b.gstar;
  const auto& al = b.alpha;
  const auto& be = b.beta;
  // c(p, q) = alpha^k f_pk^q - alpha^q beta_p
  BasicMatrix<T> c(d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      T s(0);
      for (std::size_t k = 0; k < d; ++k) s += al[k] * f(p, k, q);
      c(p, q) = s - al[q] * be[p];
    }
  using detail::delta;
  Grid4<T> r(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) {
          T s(0);
          for (std::size_t k = 0; k < d; ++k) {
            s += f(i, j, k) * ft(m, n, k);
            s -= f(i, k, m) * ft(k, n, j);
            s -= f(i, k, n) * ft(m, k, j);
            s -= f(k, j, m) * ft(k, n, i);
            s -= f(k, j, n) * ft(m, k, i);
          }
          s += be[i] * ft(m, n, j) - be[j] * ft(m, n, i);
          s += al[m] * f(i, j, n) - al[n] * f(i, j, m);
          s += c(i, m) * delta<T>(j, n) - c(j, m) * delta<T>(i, n);
          s -= c(i, n) * delta<T>(j, m);
          s += c(j, n) * delta<T>(i, m);
          r(i, j, m, n) = s;
        }
  return r;
}

/// The same residual assembled from adjoint matrices: entry (i, j) of
///   D^mn + C_i^m delta_j^n - C_j^m delta_i^n - C_i^n delta_j^m + C_j^n delta_i^m
/// with C = alpha^k X_k - B A^t and D^mn built from X~, Y and the column F~^mn.
template <class T>
Grid4<T> mixed_residual_matrix(const BasicBialgebra<T>& b) {
  b.check_shape();
  const std::size_t d = b.dim();
  const auto xs = adjoint_x(b.g);
  const auto ys = adjoint_y(b.g);
  const auto xts = adjoint_x(b.gstar);
  BasicMatrix<T> acol(d, 1), bcol(d, 1);
  for (std::size_t i = 0; i < d; ++i) {
    acol(i, 0) = b.alpha[i];
    bcol(i, 0) = b.beta[i];
  }
  BasicMatrix<T> c = BasicMatrix<T>(d) - bcol * acol.transpose();
  for (std::size_t k = 0; k < d; ++k) c += xs[k] * b.alpha[k];

  using detail::delta;
  Grid4<T> r(d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n) {
      BasicMatrix<T> fcol(d, 1);
      for (std::size_t k = 0; k < d; ++k) fcol(k, 0) = b.gstar(m, n, k);
      BasicMatrix<T> dm = ys[m] * xts[n] - ys[n] * xts[m] + xts[n].transpose() * ys[m] -
                          xts[m].transpose() * ys[n] + bcol * fcol.transpose() - fcol * bcol.transpose() +
                          ys[m] * b.alpha[n] - ys[n] * b.alpha[m];
      for (std::size_t k = 0; k < d; ++k) dm += ys[k] * xts[m](n, k);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          T s = dm(i, j);
          s += c(i, m) * delta<T>(j, n) - c(j, m) * delta<T>(i, n);
          s -= c(i, n) * delta<T>(j, m);
          s += c(j, n) * delta<T>(i, m);
          r(i, j, m, n) = s;
        }
    }
  return r;
}

/// alpha^i beta_i.
template <class T>
T orthogonality_residual(const BasicBialgebra<T>& b) {
  return dot(b.alpha, b.beta);
}

/// Tr(A B^t) with A, B the alpha and beta columns.
template <class T>
T orthogonality_residual_matrix(const BasicBialgebra<T>& b) {
  const std::size_t d = b.dim();
  BasicMatrix<T> acol(d, 1), bcol(d, 1);
  for (std::size_t i = 0; i < d; ++i) {
    acol(i, 0) = b.alpha[i];
    bcol(i, 0) = b.beta[i];
  }
  return trace(acol * bcol.transpose());
}

/// R(i, m) = alpha^n f_ni^m - beta_n f~^nm_i.
template <class T>
BasicMatrix<T> compatibility_residual(const BasicBialgebra<T>& b) {
  const std::size_t d = b.dim();
  BasicMatrix<T> r(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t m = 0; m < d; ++m) {
      T s(0);
      for (std::size_t n = 0; n < d; ++n) s += b.alpha[n] * b.g(n, i, m) - b.beta[n] * b.gstar(n, m, i);
      r(i, m) = s;
    }
  return r;
}

/// alpha^i (X_i)^t - beta_i X~^i. Equals the transpose of -compatibility_residual.
template <class T>
BasicMatrix<T> compatibility_residual_matrix(const BasicBialgebra<T>& b) {
  const std::size_t d = b.dim();
  const auto xs = adjoint_x(b.g);
  const auto xts = adjoint_x(b.gstar);
  BasicMatrix<T> r(d);
  for (std::size_t i = 0; i < d; ++i) r += xs[i].transpose() * b.alpha[i] - xts[i] * b.beta[i];
  return r;
}

/// R(m, n) = alpha^i f~^mn_i.
template <class T>
BasicMatrix<T> cocycle_x0_residual(const BasicBialgebra<T>& b) {
  const std::size_t d = b.dim();
  BasicMatrix<T> r(d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n) {
      T s(0);
      for (std::size_t i = 0; i < d; ++i) s += b.alpha[i] * b.gstar(m, n, i);
      r(m, n) = s;
    }
  return r;
}

/// alpha^i Y~_i (equals -cocycle_x0_residual).
template <class T>
BasicMatrix<T> cocycle_x0_residual_matrix(const BasicBialgebra<T>& b) {
  const auto yts = adjoint_y(b.gstar);
  BasicMatrix<T> r(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) r += yts[i] * b.alpha[i];
  return r;
}

/// R(m, n) = beta_i f_mn^i.
template <class T>
BasicMatrix<T> cocycle_phi0_residual(const BasicBialgebra<T>& b) {
  const std::size_t d = b.dim();
  BasicMatrix<T> r(d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n) {
      T s(0);
      for (std::size_t i = 0; i < d; ++i) s += b.beta[i] * b.g(m, n, i);
      r(m, n) = s;
    }
  return r;
}

/// beta_i Y^i (equals -cocycle_phi0_residual).
template <class T>
BasicMatrix<T> cocycle_phi0_residual_matrix(const BasicBialgebra<T>& b) {
  const auto ys = adjoint_y(b.g);
  BasicMatrix<T> r(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) r += ys[i] * b.beta[i];
  return r;
}

/// Brackets on g + g* in the basis (X_1..X_d, X~^1..X~^d): index p < d is X_p,
/// index d + q is X~^q. The mixed block follows
///   [X_i, X~^j] = (f~^jk_i + 1/2 alpha^k delta_i^j - alpha^j delta_i^k) X_k
///              + (f_ki^j - 1/2 beta_k delta_i^j + beta_i delta_k^j) X~^k.
/// This bracket is antisymmetric but in general does not satisfy Jacobi.
template <class T>
BasicStructureTensor<T> double_brackets(const BasicBialgebra<T>& b) {
  b.check_shape();
  const std::size_t d = b.dim();
  BasicStructureTensor<T> t(2 * d);
  const T half = T(1) / T(2);
  using detail::delta;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        t.set(i, j, k, b.g(i, j, k));
        t.set(d + i, d + j, d + k, b.gstar(i, j, k));
      }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        t.set(i, d + j, k, b.gstar(j, k, i) + half * b.alpha[k] * delta<T>(i, j) - b.alpha[j] * delta<T>(i, k));
        t.set(i, d + j, d + k, b.g(k, i, j) - half * b.beta[k] * delta<T>(i, j) + b.beta[i] * delta<T>(k, j));
      }
  return t;
}

/// One condition group of the definition, evaluated exactly.
struct ConditionResult {
  std::string name;
  /// max |entry| of the residual
  Scalar residual;
  /// number of nonzero residual entries
  std::size_t nonzero = 0;
  bool pass() const { return residual == 0; }
};

struct VerificationReport {
  std::vector<ConditionResult> conditions;

  bool pass() const {
    for (const auto& c : conditions)
      if (!c.pass()) return false;
    return true;
  }

  const ConditionResult& operator[](const std::string& name) const {
    for (const auto& c : conditions)
      if (c.name == name) return c;
    throw std::out_of_range("no condition named " + name);
  }

  /// Names of the failing conditions, in evaluation order.
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : conditions)
      if (!c.pass()) out.push_back(c.name);
    return out;
  }
};

namespace detail {

template <class Range>
std::size_t count_nonzero(const Range& xs) {
  std::size_t n = 0;
  for (const auto& x : xs)
    if (x != 0) ++n;
  return n;
}

inline void require_agreement(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("index and matrix forms disagree for ") + what);
}

template <class Range>
ConditionResult summarize(std::string name, const Range& xs) {
  return {std::move(name), max_abs(xs), count_nonzero(xs)};
}

inline std::vector<Scalar> flatten(const Matrix& m) {
  std::vector<Scalar> v;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

}  // namespace detail

/// Evaluates every defining condition in both index and matrix form and
/// checks that the two forms agree entry by entry.
inline VerificationReport verify(const Bialgebra& b) {
  b.check_shape();
  const std::size_t d = b.dim();
  VerificationReport rep;
  using detail::require_agreement;
  using detail::summarize;

  const auto jg = jacobi_residual(b.g);
  require_agreement(jg == jacobi_residual_matrix(b.g), "jacobi_g");
  rep.conditions.push_back(summarize("jacobi_g", jg.raw()));

  const auto jgs = jacobi_residual(b.gstar);
  require_agreement(jgs == jacobi_residual_matrix(b.gstar), "jacobi_gstar");
  rep.conditions.push_back(summarize("jacobi_gstar", jgs.raw()));

  const auto mixed = mixed_residual(b);
  require_agreement(mixed == mixed_residual_matrix(b), "mixed");
  rep.conditions.push_back(summarize("mixed", mixed.raw()));

  const Scalar orth = orthogonality_residual(b);
  require_agreement(orth == orthogonality_residual_matrix(b), "orthogonality");
  rep.conditions.push_back(summarize("orthogonality", std::vector<Scalar>{orth}));

  const Matrix comp = compatibility_residual(b);
  require_agreement(compatibility_residual_matrix(b) == -comp.transpose(), "compatibility");
  rep.conditions.push_back(summarize("compatibility", detail::flatten(comp)));

  const Matrix cx = cocycle_x0_residual(b);
  require_agreement(cocycle_x0_residual_matrix(b) == -cx, "cocycle_X0");
  rep.conditions.push_back(summarize("cocycle_X0", detail::flatten(cx)));

  const Matrix cp = cocycle_phi0_residual(b);
  require_agreement(cocycle_phi0_residual_matrix(b) == -cp, "cocycle_phi0");
  rep.conditions.push_back(summarize("cocycle_phi0", detail::flatten(cp)));

  (void)d;
  return rep;
}

}  // namespace jlb
