#pragma once

#include "jlb/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <vector>

namespace jlb {

/// Dense column vector over a commutative ring T.
template <class T>
class BasicVector {
 public:
  BasicVector() = default;
  explicit BasicVector(std::size_t n) : v_(n, T(0)) {}
  BasicVector(std::initializer_list<T> xs) : v_(xs) {}
  explicit BasicVector(std::vector<T> xs) : v_(std::move(xs)) {}

  std::size_t dim() const { return v_.size(); }
  const T& operator[](std::size_t i) const { return v_[i]; }
  T& operator[](std::size_t i) { return v_[i]; }
  const std::vector<T>& entries() const { return v_; }

  bool is_zero() const {
    for (const auto& x : v_)
      if (!(x == T(0))) return false;
    return true;
  }

  static BasicVector unit(std::size_t n, std::size_t i) {
    BasicVector e(n);
    e[i] = T(1);
    return e;
  }

  friend bool operator==(const BasicVector&, const BasicVector&) = default;

 private:
  std::vector<T> v_;
};

template <class T>
T dot(const BasicVector<T>& a, const BasicVector<T>& b) {
  if (a.dim() != b.dim()) throw dimension_mismatch("dot: dimension mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

/// Dense row-major matrix over a commutative ring T.
template <class T>
class BasicMatrix {
 public:
  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}
  explicit BasicMatrix(std::size_t n) : BasicMatrix(n, n) {}
  BasicMatrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw dimension_mismatch("ragged matrix literal");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  /// Side length; only meaningful for square matrices.
  std::size_t dim() const { return rows_; }
  bool square() const { return rows_ == cols_; }

  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  BasicVector<T> row(std::size_t i) const {
    BasicVector<T> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  BasicVector<T> column(std::size_t j) const {
    BasicVector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  BasicMatrix transpose() const {
    BasicMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!(x == T(0))) return false;
    return true;
  }

  BasicMatrix& operator+=(const BasicMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  BasicMatrix& operator-=(const BasicMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  BasicMatrix& operator*=(const T& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) { return a += b; }
  friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) { return a -= b; }
  friend BasicMatrix operator*(BasicMatrix a, const T& s) { return a *= s; }
  friend BasicMatrix operator*(const T& s, BasicMatrix a) { return a *= s; }
  friend BasicMatrix operator-(BasicMatrix a) { return a *= T(-1); }

  friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
    if (a.cols_ != b.rows_) throw dimension_mismatch("matrix product: dimension mismatch");
    BasicMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend BasicVector<T> operator*(const BasicMatrix& a, const BasicVector<T>& v) {
    if (a.cols_ != v.dim()) throw dimension_mismatch("matrix-vector product: dimension mismatch");
    BasicVector<T> r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }

  friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

 private:
  void check_same(const BasicMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_mismatch("matrix sum: dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

template <class T>
T trace(const BasicMatrix<T>& m) {
  T s(0);
  for (std::size_t i = 0; i < m.rows() && i < m.cols(); ++i) s += m(i, i);
  return s;
}

/// Laplace expansion; works over any commutative ring. Intended for d <= 4.
template <class T>
T determinant(const BasicMatrix<T>& m) {
  if (!m.square()) throw dimension_mismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  T det(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == T(0)) continue;
    BasicMatrix<T> minor(n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, jj++) = m(i, j);
      }
    T term = m(0, c) * determinant(minor);
    if (c % 2) det -= term;
    else det += term;
  }
  return det;
}

using Matrix = BasicMatrix<Scalar>;
using Vector = BasicVector<Scalar>;

/// Exact inverse by Gauss-Jordan elimination. Throws singular_matrix.
inline Matrix inverse(const Matrix& m) {
  if (!m.square()) throw dimension_mismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) throw singular_matrix("matrix is singular");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const Scalar p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Scalar f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(Matrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    const Scalar p = a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) /= p;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Scalar f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Matrix a) { return row_reduce(a).size(); }

/// Solution set x0 + span(basis) of A x = b.
struct AffineSolution {
  Vector particular;
  std::vector<Vector> basis;
  /// Indices of the free unknowns; basis[k] has a 1 at free[k].
  std::vector<std::size_t> free;

  Vector at(const std::vector<Scalar>& t) const {
    Vector x = particular;
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (std::size_t i = 0; i < x.dim(); ++i) x[i] += t[k] * basis[k][i];
    return x;
  }
};

/// Solves A x = b exactly. Returns nullopt when inconsistent.
inline std::optional<AffineSolution> solve_linear(const Matrix& a, const Vector& b) {
  if (a.rows() != b.dim()) throw dimension_mismatch("solve_linear: dimension mismatch");
  const std::size_t n = a.cols();
  Matrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  AffineSolution sol{Vector(n), {}, {}};
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[pivots[r]] = true;
    sol.particular[pivots[r]] = aug(r, n);
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -aug(r, f);
    sol.basis.push_back(std::move(v));
    sol.free.push_back(f);
  }
  return sol;
}

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m(i, j));
    os << ']';
  }
  return os << ']';
}

inline std::ostream& operator<<(std::ostream& os, const Vector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? ", " : "") << to_string(v[i]);
  return os << ')';
}

}  // namespace jlb
