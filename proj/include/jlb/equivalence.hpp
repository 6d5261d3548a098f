#pragma once

#include "jlb/bialgebra.hpp"
#include "jlb/catalog.hpp"

#include <functional>
#include <map>
#include <sstream>

namespace jlb {

struct not_automorphism : error {
  using error::error;
};
struct no_match : error {
  using error::error;
};

// ---------------------------------------------------------------------------
// Transformation by an automorphism
//
// A acts on the basis of g by X'_i = A_i^k X_k and on the dual basis by A^{-t}.
// Then
//   f~'^ij_n = (A^-1)_k^i (A^-1)_l^j f~^kl_m A_n^m,
//   alpha'   = A^{-t} alpha,
//   beta'    = A beta,
// and g is unchanged. Composition: transform(transform(b, A1), A2) equals
// transform(b, A2 * A1).

inline Bialgebra transform_unchecked(const Bialgebra& b, const Matrix& a) {
  const std::size_t d = b.dim();
  const Matrix inv = inverse(a);
  Bialgebra out{b.g, StructureTensor(d), Vector(d), Vector(d)};
  // tmp(k,l,n) = f~^kl_m A_n^m
  std::vector<Scalar> tmp(d * d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t n = 0; n < d; ++n) {
        Scalar s = 0;
        for (std::size_t m = 0; m < d; ++m) s += b.gstar(k, l, m) * a(n, m);
        tmp[(k * d + l) * d + n] = s;
      }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t n = 0; n < d; ++n) {
        Scalar s = 0;
        for (std::size_t k = 0; k < d; ++k) {
          if (inv(k, i) == 0) continue;
          for (std::size_t l = 0; l < d; ++l) s += inv(k, i) * inv(l, j) * tmp[(k * d + l) * d + n];
        }
        out.gstar.set(i, j, n, s);
      }
  out.alpha = inv.transpose() * b.alpha;
  out.beta = a * b.beta;
  return out;
}

/// Throws not_automorphism if A does not preserve the bracket of g.
inline Bialgebra transform(const Bialgebra& b, const Matrix& a) {
  b.check_shape();
  if (!is_automorphism(b.g, a)) throw not_automorphism("matrix is not an automorphism of g");
  return transform_unchecked(b, a);
}

/// True iff A is an automorphism of the shared g and transform(b1, A) == b2.
/// Cheap necessary conditions are tested first; none of them needs A^-1.
inline bool is_equivalent_witness(const Bialgebra& b1, const Bialgebra& b2, const Matrix& a) {
  b1.check_shape();
  b2.check_shape();
  const std::size_t d = b1.dim();
  if (b2.dim() != d || a.rows() != d || a.cols() != d) throw dimension_mismatch("witness dimensions differ");
  if (!(b1.g == b2.g)) return false;
  if (!(a * b1.beta == b2.beta)) return false;
  if (!(a.transpose() * b2.alpha == b1.alpha)) return false;
  // f~2^ij_n A_i^p A_j^q = A_n^m f~1^pq_m
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p + 1; q < d; ++q)
      for (std::size_t n = 0; n < d; ++n) {
        Scalar lhs = 0, rhs = 0;
        for (std::size_t i = 0; i < d; ++i) {
          if (a(i, p) == 0) continue;
          for (std::size_t j = 0; j < d; ++j) lhs += b2.gstar(i, j, n) * a(i, p) * a(j, q);
        }
        for (std::size_t m = 0; m < d; ++m) rhs += a(n, m) * b1.gstar(p, q, m);
        if (lhs != rhs) return false;
      }
  if (determinant(a) == 0) return false;
  return is_automorphism(b1.g, a);
}

// ---------------------------------------------------------------------------
// Grid search

/// Rational grid p/q, |p| <= max_num, 1 <= q <= max_den, in the order
/// 0, 1, -1, 2, -2, ..., 1/2, -1/2, 3/2, ... (integers first).
inline std::vector<Scalar> rational_grid(int max_num = 3, int max_den = 2) {
  std::vector<Scalar> out;
  auto push = [&](const Scalar& x) {
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  };
  for (int q = 1; q <= max_den; ++q) {
    if (q == 1) push(0);
    for (int p = 1; p <= max_num; ++p) {
      push(Scalar(p, q));
      push(Scalar(-p, q));
    }
  }
  return out;
}

struct SearchRegion {
  std::vector<Scalar> values = rational_grid();
  std::size_t max_points = 200000;

  std::string describe() const {
    std::ostringstream os;
    os << values.size() << "-value rational grid {";
    for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << to_string(values[i]);
    os << "}, budget " << max_points << " points";
    return os.str();
  }
};

struct EquivalenceVerdict {
  enum class Status { Equivalent, Unknown };
  Status status = Status::Unknown;
  std::optional<Matrix> witness;
  std::string searched;
  std::size_t points = 0;

  bool equivalent() const { return status == Status::Equivalent; }
};

namespace detail {

/// Visits index vectors in {0..G-1}^n shell by shell: every vector whose
/// largest index is s comes before any vector whose largest index is s+1,
/// lexicographic within a shell. Stops when visit returns true.
/// Returns true if visit stopped the walk.
template <class F>
bool for_each_shell(std::size_t n, std::size_t levels, F&& visit) {
  std::vector<std::size_t> idx(n, 0);
  if (n == 0) return visit(idx, std::size_t(0));
  for (std::size_t s = 0; s < levels; ++s) {
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      const std::size_t top = *std::max_element(idx.begin(), idx.end());
      if (top == s && visit(idx, s)) return true;
      std::size_t pos = n;
      while (pos > 0) {
        --pos;
        if (++idx[pos] <= s) break;
        idx[pos] = 0;
        if (pos == 0) goto next_shell;
      }
    }
  next_shell:;
  }
  return false;
}

struct budget_exhausted {};

}  // namespace detail

/// Linear condition sum_u coeffs[u] * C_u = rhs over the entries C_u of a
/// d x d matrix, u = i*d + k.
struct LinearConstraint {
  std::vector<Scalar> coeffs;
  Scalar rhs;
};

/// Whether C^i_k C^j_l from^kl_m = to^ij_n C^n_m for all i, j, m, i.e. the
/// basis change e'_i = C_i^k e_k carries the bracket `from` to the bracket `to`.
inline bool is_isomorphism(const StructureTensor& from, const StructureTensor& to, const Matrix& c) {
  const std::size_t d = from.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t m = 0; m < d; ++m) {
        Scalar lhs = 0, rhs = 0;
        for (std::size_t k = 0; k < d; ++k) {
          if (c(i, k) == 0) continue;
          for (std::size_t l = 0; l < d; ++l) lhs += c(i, k) * c(j, l) * from(k, l, m);
        }
        for (std::size_t n = 0; n < d; ++n) rhs += to(i, j, n) * c(n, m);
        if (lhs != rhs) return false;
      }
  return true;
}

/// The adjoint-matrix form C (C^i_k Xfrom^k) = Xto^i C, evaluated independently.
inline bool is_isomorphism_matrix_form(const StructureTensor& from, const StructureTensor& to, const Matrix& c) {
  const std::size_t d = from.dim();
  const auto xf = adjoint_x(from);
  const auto xt = adjoint_x(to);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix comb(d);
    for (std::size_t k = 0; k < d; ++k) comb += xf[k] * c(i, k);
    if (!(c * comb == xt[i] * c)) return false;
  }
  return true;
}

/// Searches for an invertible C with is_isomorphism(from, to, C), the given
/// linear side conditions, and accept(C). One row of C is enumerated on the
/// grid; the bracket equations involving that row are then linear in the
/// remaining entries and are solved exactly; leftover free entries are
/// enumerated on the grid. Returns nullopt when the budget or grid is exhausted.
inline std::optional<Matrix> find_isomorphism(const StructureTensor& from, const StructureTensor& to,
                                              const std::vector<LinearConstraint>& extra, const SearchRegion& region,
                                              const std::function<bool(const Matrix&)>& accept, std::size_t* points_out = nullptr) {
  const std::size_t d = from.dim();
  const std::size_t n = d * d;
  const std::size_t levels = region.values.size();
  std::size_t points = 0;
  std::optional<Matrix> found;

  auto try_matrix = [&](const Matrix& c) {
    if (++points > region.max_points) throw detail::budget_exhausted{};
    if (determinant(c) == 0) return false;
    if (!is_isomorphism(from, to, c)) return false;
    if (!accept(c)) return false;
    found = c;
    return true;
  };

  auto base_system = [&](std::vector<std::vector<Scalar>>& rows, std::vector<Scalar>& rhs) {
    for (const auto& lc : extra) {
      rows.push_back(lc.coeffs);
      rhs.push_back(lc.rhs);
    }
  };

  auto to_matrix = [&](const Vector& x) {
    Matrix c(d);
    for (std::size_t u = 0; u < n; ++u) c(u / d, u % d) = x[u];
    return c;
  };

  auto solve = [&](const std::vector<std::vector<Scalar>>& rows, const std::vector<Scalar>& rhs) {
    Matrix a(rows.size(), n);
    Vector b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t u = 0; u < n; ++u) a(r, u) = rows[r][u];
      b[r] = rhs[r];
    }
    if (rows.empty()) {
      a = Matrix(1, n);
      b = Vector(1);
    }
    return solve_linear(a, b);
  };

  if (from.is_zero() != to.is_zero()) {
    if (points_out) *points_out = 0;
    return std::nullopt;
  }
  try {
    if (from.is_zero()) {
      // both abelian: only the side conditions constrain C
      std::vector<std::vector<Scalar>> rows;
      std::vector<Scalar> rhs;
      base_system(rows, rhs);
      auto sol = solve(rows, rhs);
      if (!sol) return std::nullopt;
      detail::for_each_shell(sol->free.size(), levels, [&](const std::vector<std::size_t>& idx, std::size_t) {
        std::vector<Scalar> t;
        for (auto i : idx) t.push_back(region.values[i]);
        return try_matrix(to_matrix(sol->at(t)));
      });
    } else {
      // Pivot row: the basis element whose adjoint action in `from` is richest.
      std::size_t p = 0, best = 0;
      for (std::size_t k = 0; k < d; ++k) {
        std::size_t cnt = 0;
        for (std::size_t l = 0; l < d; ++l)
          for (std::size_t m = 0; m < d; ++m)
            if (from(k, l, m) != 0) ++cnt;
        if (cnt > best) best = cnt, p = k;
      }
      std::map<std::vector<std::size_t>, std::optional<AffineSolution>> cache;
      auto solution_for = [&](const std::vector<std::size_t>& ridx) -> const std::optional<AffineSolution>& {
        auto it = cache.find(ridx);
        if (it != cache.end()) return it->second;
        std::vector<std::vector<Scalar>> rows;
        std::vector<Scalar> rhs;
        base_system(rows, rhs);
        for (std::size_t k = 0; k < d; ++k) {
          std::vector<Scalar> r(n, 0);
          r[p * d + k] = 1;
          rows.push_back(r);
          rhs.push_back(region.values[ridx[k]]);
        }
        // pairs (p, j): sum_l (sum_k C_p^k from^kl_m) C_j^l - sum_q to^pj_q C_q^m = 0
        for (std::size_t j = 0; j < d; ++j) {
          if (j == p) continue;
          for (std::size_t m = 0; m < d; ++m) {
            std::vector<Scalar> r(n, 0);
            for (std::size_t l = 0; l < d; ++l) {
              Scalar s = 0;
              for (std::size_t k = 0; k < d; ++k) s += region.values[ridx[k]] * from(k, l, m);
              r[j * d + l] += s;
            }
            for (std::size_t q = 0; q < d; ++q) r[q * d + m] -= to(p, j, q);
            rows.push_back(r);
            rhs.push_back(0);
          }
        }
        return cache.emplace(ridx, solve(rows, rhs)).first->second;
      };
      for (std::size_t s = 0; s < levels && !found; ++s) {
        // row values and free values both drawn from the first s+1 grid values,
        // with at least one of them at level s
        detail::for_each_shell(d, s + 1, [&](const std::vector<std::size_t>& ridx, std::size_t rtop) {
          if (std::all_of(ridx.begin(), ridx.end(), [](std::size_t i) { return i == 0; }) && region.values[0] == 0)
            return false;
          const auto& sol = solution_for(ridx);
          if (!sol) return false;
          return detail::for_each_shell(sol->free.size(), s + 1, [&](const std::vector<std::size_t>& fidx, std::size_t ftop) {
            if (std::max(rtop, sol->free.empty() ? 0 : ftop) != s) return false;
            std::vector<Scalar> t;
            for (auto i : fidx) t.push_back(region.values[i]);
            return try_matrix(to_matrix(sol->at(t)));
          });
        });
      }
    }
  } catch (const detail::budget_exhausted&) {
    if (points_out) *points_out = region.max_points;
    return std::nullopt;
  }
  if (points_out) *points_out = points;
  return found;
}

// ---------------------------------------------------------------------------
// Catalog recognition and invariants

/// The catalog algebra whose structure constants equal t exactly, if any.
inline std::optional<LieAlgebra> catalog_match(const StructureTensor& t) {
  for (const auto& e : catalog_entries()) {
    if (e.dim != t.dim()) continue;
    std::optional<Scalar> param;
    if (e.parametrized) param = -t(0, 1, 1);
    try {
      LieAlgebra g = lookup(e.name, param);
      if (g.tensor == t) return g;
    } catch (const error&) {
    }
  }
  return std::nullopt;
}

/// Dimension of the derived algebra [g, g].
inline std::size_t derived_dimension(const StructureTensor& t) {
  const std::size_t d = t.dim();
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Vector v(d);
      for (std::size_t k = 0; k < d; ++k) v[k] = t(i, j, k);
      rows.push_back(v);
    }
  if (rows.empty()) return 0;
  Matrix m(rows.size(), d);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t k = 0; k < d; ++k) m(r, k) = rows[r][k];
  return rank(m);
}

/// tau_i = tr ad_{X_i}.
inline Vector trace_form(const StructureTensor& t) {
  const std::size_t d = t.dim();
  Vector tau(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) tau[i] += t(i, j, j);
  return tau;
}

struct AlgebraClass {
  std::string name;
  std::optional<Scalar> param;
};

namespace detail {

inline int sign(const Scalar& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

inline int sign_changes(const std::vector<Scalar>& coeffs) {
  int changes = 0, last = 0;
  for (const auto& c : coeffs) {
    const int s = sign(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// (positive, negative) eigenvalue counts of a real symmetric 3x3 matrix, via
/// Descartes' rule on its (real-rooted) characteristic polynomial.
inline std::pair<int, int> inertia3(const Matrix& s) {
  const Scalar c2 = trace(s);
  const Scalar c1 = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0) + s(0, 0) * s(2, 2) - s(0, 2) * s(2, 0) +
                    s(1, 1) * s(2, 2) - s(1, 2) * s(2, 1);
  const Scalar c0 = determinant(s);
  // p(x) = x^3 - c2 x^2 + c1 x - c0 ; p(-x) = -(x^3 + c2 x^2 + c1 x + c0)
  const int pos = sign_changes({1, -c2, c1, -c0});
  const int neg = sign_changes({1, c2, c1, c0});
  return {pos, neg};
}

}  // namespace detail

/// Isomorphism class of a real Lie algebra of dimension 2 or 3 among the
/// catalog entries. Throws no_match if the class parameter is irrational.
inline AlgebraClass classify_algebra(const StructureTensor& t) {
  const std::size_t d = t.dim();
  if (!is_lie_algebra(t)) throw error("structure constants do not satisfy the Jacobi identity");
  if (d == 2) return {t.is_zero() ? "A1" : "A2", std::nullopt};
  if (d != 3) throw dimension_mismatch("only dimensions 2 and 3 are cataloged");
  if (t.is_zero()) return {"I", std::nullopt};
  const Vector tau = trace_form(t);
  if (tau.is_zero()) {
    // f_ij^k = eps_ijl n^lk with n symmetric
    Matrix nm(3);
    for (std::size_t k = 0; k < 3; ++k) {
      nm(0, k) = t(1, 2, k);
      nm(1, k) = t(2, 0, k);
      nm(2, k) = t(0, 1, k);
    }
    auto [pos, neg] = detail::inertia3(nm);
    const int r = pos + neg;
    if (r == 1) return {"II", std::nullopt};
    if (r == 2) return {pos == neg ? "VI_0" : "VII_0", std::nullopt};
    return {(pos == 3 || neg == 3) ? "IX" : "VIII", std::nullopt};
  }
  if (derived_dimension(t) == 1) return {"III", std::nullopt};
  // ad_x restricted to the abelian ideal ker(tau), for any x with tau(x) != 0
  std::size_t x = 0;
  while (tau[x] == 0) ++x;
  Matrix row(1, 3);
  for (std::size_t k = 0; k < 3; ++k) row(0, k) = tau[k];
  auto ker = solve_linear(row, Vector(1));
  const Vector u1 = ker->basis[0], u2 = ker->basis[1];
  const Vector ex = Vector::unit(3, x);
  // express [x, u] in the basis (u1, u2)
  Matrix basis(3, 2);
  for (std::size_t k = 0; k < 3; ++k) {
    basis(k, 0) = u1[k];
    basis(k, 1) = u2[k];
  }
  Matrix m(2);
  for (std::size_t c = 0; c < 2; ++c) {
    const Vector img = t.bracket(ex, c == 0 ? u1 : u2);
    auto coords = solve_linear(basis, img);
    if (!coords) throw std::logic_error("ker(tau) is not an ideal");
    m(0, c) = coords->particular[0];
    m(1, c) = coords->particular[1];
  }
  const Scalar tr = trace(m);
  const Scalar disc = tr * tr - 4 * determinant(m);
  if (disc == 0) {
    const bool scalar = m(0, 1) == 0 && m(1, 0) == 0 && m(0, 0) == m(1, 1);
    return {scalar ? "V" : "IV", std::nullopt};
  }
  if (tr == 0) return {disc > 0 ? "VI_0" : "VII_0", std::nullopt};
  const auto root = exact_sqrt(disc > 0 ? disc : Scalar(-disc));
  if (!root) throw no_match("class parameter is irrational (a^2 = " + to_string(tr * tr / abs(disc)) + ")");
  const Scalar a = abs(tr) / *root;
  return {disc > 0 ? "VI_a" : "VII_a", a};
}

struct Identification {
  LieAlgebra algebra;
  /// new basis = C * old basis; satisfies is_isomorphism(gstar, algebra.tensor, C)
  Matrix c;
};

/// Identifies the dual algebra with a catalog entry and finds a rational
/// isomorphism C on the search grid. Throws no_match when none is found.
inline Identification identify_dual(const StructureTensor& gstar, const SearchRegion& region = {}) {
  const AlgebraClass cls = classify_algebra(gstar);
  LieAlgebra target = lookup(cls.name, cls.param);
  if (gstar == target.tensor) return {target, Matrix::identity(gstar.dim())};
  auto c = find_isomorphism(gstar, target.tensor, {}, region, [](const Matrix&) { return true; });
  if (!c) throw no_match("isomorphic to " + target.label() + " but no isomorphism found on the " + region.describe());
  return {target, *c};
}

// ---------------------------------------------------------------------------
// Equivalence search

namespace detail {

/// Invariants preserved by every automorphism; a mismatch means no witness
/// exists, so the search can be skipped. The verdict stays Unknown.
inline std::string invariant_mismatch(const Bialgebra& b1, const Bialgebra& b2) {
  if (b1.alpha.is_zero() != b2.alpha.is_zero()) return "X0 vanishes on one side only";
  if (b1.beta.is_zero() != b2.beta.is_zero()) return "phi0 vanishes on one side only";
  if (b1.gstar.is_zero() != b2.gstar.is_zero()) return "dual bracket vanishes on one side only";
  if (derived_dimension(b1.gstar) != derived_dimension(b2.gstar)) return "dual derived algebras differ in dimension";
  return {};
}

inline std::vector<LinearConstraint> witness_constraints(const Bialgebra& b1, const Bialgebra& b2, bool transposed) {
  // For C = A (transposed == false) or C = A^t (transposed == true):
  //   A beta1 = beta2, A^t alpha2 = alpha1.
  const std::size_t d = b1.dim();
  std::vector<LinearConstraint> out;
  auto idx = [&](std::size_t i, std::size_t k) { return transposed ? k * d + i : i * d + k; };
  for (std::size_t i = 0; i < d; ++i) {
    LinearConstraint lc{std::vector<Scalar>(d * d, 0), b2.beta[i]};
    for (std::size_t m = 0; m < d; ++m) lc.coeffs[idx(i, m)] = b1.beta[m];
    out.push_back(lc);
  }
  for (std::size_t i = 0; i < d; ++i) {
    LinearConstraint lc{std::vector<Scalar>(d * d, 0), b1.alpha[i]};
    for (std::size_t m = 0; m < d; ++m) lc.coeffs[idx(m, i)] = b2.alpha[m];
    out.push_back(lc);
  }
  return out;
}

}  // namespace detail

/// Sound but incomplete search for A in Aut(g) with transform(b1, A) == b2.
/// Templated automorphism families are enumerated branch by branch over the
/// grid. For GL(d) and for groups given only by the predicate, the entries of
/// A are found by the linear-elimination search above. Throws unknown_algebra
/// when g is not a catalog tensor.
inline EquivalenceVerdict search_witness(const Bialgebra& b1, const Bialgebra& b2, const SearchRegion& region = {}) {
  b1.check_shape();
  b2.check_shape();
  if (b1.dim() != b2.dim()) throw dimension_mismatch("bialgebras have different dimensions");
  if (!(b1.g == b2.g)) throw error("bialgebras do not share the same g");
  const auto g = catalog_match(b1.g);
  if (!g) throw unknown_algebra("g is not a catalog algebra in its standard basis");
  const std::size_t d = b1.dim();

  EquivalenceVerdict v;
  if (b1 == b2) {
    v.status = EquivalenceVerdict::Status::Equivalent;
    v.witness = Matrix::identity(d);
    v.searched = "identity";
    v.points = 1;
    return v;
  }
  if (auto why = detail::invariant_mismatch(b1, b2); !why.empty()) {
    v.searched = "no search: " + why;
    return v;
  }

  const auto fam = automorphism_family(g->name);
  auto accept = [&](const Matrix& a) { return is_equivalent_witness(b1, b2, a); };
  std::size_t points = 0;
  std::optional<Matrix> hit;

  if (fam.kind == AutomorphismFamily::Kind::Predicate) {
    // automorphisms of g: is_isomorphism(g, g, A)
    hit = find_isomorphism(b1.g, b1.g, detail::witness_constraints(b1, b2, false), region, accept, &points);
  } else if (!fam.group.empty()) {
    // GL(d) on an abelian g. With C = A^t the dual-bracket condition reads
    // is_isomorphism(f~2, f~1, C).
    hit = find_isomorphism(b2.gstar, b1.gstar, detail::witness_constraints(b1, b2, true), region,
                           [&](const Matrix& c) { return accept(c.transpose()); }, &points);
    if (hit) hit = hit->transpose();
  } else {
    for (const auto& br : fam.branches) {
      const bool stop = detail::for_each_shell(br.params.size(), region.values.size(),
                                               [&](const std::vector<std::size_t>& idx, std::size_t) {
                                                 if (++points > region.max_points) return true;
                                                 Env env;
                                                 for (std::size_t k = 0; k < idx.size(); ++k)
                                                   env[br.params[k]] = region.values[idx[k]];
                                                 Matrix a;
                                                 try {
                                                   a = instantiate(br, env);
                                                 } catch (const error&) {
                                                   return false;
                                                 }
                                                 if (accept(a)) {
                                                   hit = a;
                                                   return true;
                                                 }
                                                 return false;
                                               });
      if (stop) break;
    }
    points = std::min(points, region.max_points);
  }

  v.points = points;
  v.searched = g->name + " automorphisms over the " + region.describe() + " (" + std::to_string(points) + " points)";
  if (hit) {
    if (!is_equivalent_witness(b1, b2, *hit)) throw std::logic_error("search produced an invalid witness");
    v.status = EquivalenceVerdict::Status::Equivalent;
    v.witness = *hit;
  }
  return v;
}

}  // namespace jlb
