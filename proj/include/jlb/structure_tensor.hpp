#pragma once

#include "jlb/matrix.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace jlb {

/// Structure constants of a bracket on a d-dimensional space:
/// t(i, j, k) is the coefficient of e_k in [e_i, e_j]. Used for both f_ij^k of g
/// and (by role) for the dual constants with the first two indices up.
///
/// Antisymmetric in (i, j) by construction; every mutator writes both halves.
template <class T>
class BasicStructureTensor {
 public:
  struct Entry {
    std::size_t i, j, k;
    T value;
  };

  BasicStructureTensor() = default;
  explicit BasicStructureTensor(std::size_t d) : d_(d), c_(d * d * d, T(0)) {}

  /// Entries with i < j (zero-based); the i > j half is completed.
  static BasicStructureTensor from_upper(std::size_t d, const std::vector<Entry>& upper) {
    BasicStructureTensor t(d);
    for (const auto& e : upper) t.set(e.i, e.j, e.k, e.value);
    return t;
  }

  /// Antisymmetric part (raw_ij^k - raw_ji^k)/2 of an arbitrary d^3 array
  /// laid out as raw[(i*d + j)*d + k].
  static BasicStructureTensor antisymmetrized(std::size_t d, const std::vector<T>& raw) {
    if (raw.size() != d * d * d) throw dimension_mismatch("antisymmetrized: expected d^3 entries");
    BasicStructureTensor t(d);
    const T half = T(1) / T(2);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          t.c_[t.idx(i, j, k)] = (raw[(i * d + j) * d + k] - raw[(j * d + i) * d + k]) * half;
    return t;
  }

  std::size_t dim() const { return d_; }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const { return c_[idx(i, j, k)]; }

  /// Sets t(i,j,k) = v and t(j,i,k) = -v. A nonzero diagonal value is rejected.
  void set(std::size_t i, std::size_t j, std::size_t k, const T& v) {
    if (i >= d_ || j >= d_ || k >= d_) throw dimension_mismatch("structure constant index out of range");
    if (i == j) {
      if (!(v == T(0))) throw error("structure constant with i == j must vanish");
      return;
    }
    c_[idx(i, j, k)] = v;
    c_[idx(j, i, k)] = -v;
  }

  /// Coefficients of [u, v] = u^i v^j t(i,j,k) e_k.
  BasicVector<T> bracket(const BasicVector<T>& u, const BasicVector<T>& v) const {
    BasicVector<T> r(d_);
    for (std::size_t i = 0; i < d_; ++i) {
      if (u[i] == T(0)) continue;
      for (std::size_t j = 0; j < d_; ++j) {
        if (v[j] == T(0)) continue;
        const T uv = u[i] * v[j];
        for (std::size_t k = 0; k < d_; ++k) r[k] += uv * (*this)(i, j, k);
      }
    }
    return r;
  }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!(x == T(0))) return false;
    return true;
  }

  const std::vector<T>& raw() const { return c_; }

  friend bool operator==(const BasicStructureTensor&, const BasicStructureTensor&) = default;

 private:
  std::size_t idx(std::size_t i, std::size_t j, std::size_t k) const { return (i * d_ + j) * d_ + k; }

  std::size_t d_ = 0;
  std::vector<T> c_;
};

/// Rank-4 array indexed (i, j, m, n); holds Jacobi and mixed-Jacobi residuals.
template <class T>
class Grid4 {
 public:
  Grid4() = default;
  explicit Grid4(std::size_t d) : d_(d), c_(d * d * d * d, T(0)) {}

  std::size_t dim() const { return d_; }
  const T& operator()(std::size_t i, std::size_t j, std::size_t m, std::size_t n) const {
    return c_[((i * d_ + j) * d_ + m) * d_ + n];
  }
  T& operator()(std::size_t i, std::size_t j, std::size_t m, std::size_t n) {
    return c_[((i * d_ + j) * d_ + m) * d_ + n];
  }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!(x == T(0))) return false;
    return true;
  }

  const std::vector<T>& raw() const { return c_; }

  friend bool operator==(const Grid4&, const Grid4&) = default;

 private:
  std::size_t d_ = 0;
  std::vector<T> c_;
};

using StructureTensor = BasicStructureTensor<Scalar>;

/// Largest |entry| of a residual; zero iff the residual vanishes.
template <class Range>
Scalar max_abs(const Range& xs) {
  Scalar m = 0;
  for (const auto& x : xs) {
    const Scalar a = abs(x);
    if (a > m) m = a;
  }
  return m;
}

}  // namespace jlb
