#pragma once

#include "jlb/equivalence.hpp"
#include "jlb/poly.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace jlb {

// ---------------------------------------------------------------------------
// Unknowns and the residual system
//
// Unknown vector layout for dimension d: the dual constants f~^ij_k for i < j
// (pairs in lexicographic order, k fastest), then alpha^1..alpha^d, then
// beta_1..beta_d. For d = 2 this is (f~^12_1, f~^12_2, a1, a2, b1, b2).

inline std::size_t unknown_count(std::size_t d) { return d * d * (d - 1) / 2 + 2 * d; }

inline std::vector<std::string> unknown_names(std::size_t d) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        out.push_back("f" + std::to_string(i + 1) + std::to_string(j + 1) + "_" + std::to_string(k + 1));
  for (std::size_t i = 0; i < d; ++i) out.push_back("a" + std::to_string(i + 1));
  for (std::size_t i = 0; i < d; ++i) out.push_back("b" + std::to_string(i + 1));
  return out;
}

template <class T>
BasicBialgebra<T> assemble(const StructureTensor& g, const std::vector<T>& u) {
  const std::size_t d = g.dim();
  if (u.size() != unknown_count(d)) throw dimension_mismatch("unknown vector has the wrong length");
  BasicBialgebra<T> b{BasicStructureTensor<T>(d), BasicStructureTensor<T>(d), BasicVector<T>(d), BasicVector<T>(d)};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) b.g.set(i, j, k, T(g(i, j, k)));
  std::size_t p = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) b.gstar.set(i, j, k, u[p++]);
  for (std::size_t i = 0; i < d; ++i) b.alpha[i] = u[p++];
  for (std::size_t i = 0; i < d; ++i) b.beta[i] = u[p++];
  return b;
}

inline std::vector<Scalar> unknowns_of(const Bialgebra& b) {
  const std::size_t d = b.dim();
  std::vector<Scalar> u;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) u.push_back(b.gstar(i, j, k));
  for (std::size_t i = 0; i < d; ++i) u.push_back(b.alpha[i]);
  for (std::size_t i = 0; i < d; ++i) u.push_back(b.beta[i]);
  return u;
}

/// Concatenated residuals of the six adjoint-matrix conditions (dual Jacobi,
/// mixed, trace, compatibility, and the two cocycle conditions) at u. The
/// vector is zero exactly when u solves Step 1 for g. Works over any ring T
/// (Scalar for evaluation, Poly for the symbolic solver).
template <class T>
std::vector<T> residual_system(const StructureTensor& g, const std::vector<T>& u) {
  const auto b = assemble(g, u);
  std::vector<T> out;
  const auto j = jacobi_residual_matrix(b.gstar);
  out.insert(out.end(), j.raw().begin(), j.raw().end());
  const auto m = mixed_residual_matrix(b);
  out.insert(out.end(), m.raw().begin(), m.raw().end());
  out.push_back(orthogonality_residual_matrix(b));
  for (const auto& mat : {compatibility_residual_matrix(b), cocycle_x0_residual_matrix(b), cocycle_phi0_residual_matrix(b)})
    for (std::size_t r = 0; r < mat.rows(); ++r)
      for (std::size_t c = 0; c < mat.cols(); ++c) out.push_back(mat(r, c));
  return out;
}

inline bool is_step1_solution(const StructureTensor& g, const std::vector<Scalar>& u) {
  for (const auto& r : residual_system(g, u))
    if (r != 0) return false;
  return true;
}

/// Distinct nonzero polynomial equations of the system, up to sign.
inline std::vector<Poly> symbolic_system(const StructureTensor& g, const std::vector<Poly>& u) {
  std::vector<Poly> out;
  for (const auto& r : residual_system(g, u)) {
    if (r.is_zero()) continue;
    const Poly n = r.monic_sign();
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Solution families

/// A parametrized piece of the solution variety: each unknown is zero, a free
/// nonzero parameter, a fixed constant, or solved as num/den in terms of the
/// unknowns eliminated after it.
struct Family {
  enum class Kind { Zero, Free, Fixed, Solved };
  struct Var {
    Kind kind = Kind::Free;
    Scalar fixed;
    Poly num, den;
  };

  std::vector<std::string> names;
  std::vector<Var> vars;
  /// Solved unknowns in elimination order; evaluated in reverse.
  std::vector<std::size_t> order;
  /// Polynomials that must not vanish (solved unknowns are nonzero on the stratum).
  std::vector<Poly> nonzero;
  /// Equations the eliminator could not resolve; members must satisfy them.
  std::vector<Poly> unresolved;

  std::vector<std::size_t> free_vars() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i].kind == Kind::Free) out.push_back(i);
    return out;
  }

  std::size_t support() const {
    std::size_t n = 0;
    for (const auto& v : vars)
      if (v.kind != Kind::Zero) ++n;
    return n;
  }

  /// Member with the free unknowns set to `values` (in free_vars() order).
  std::optional<std::vector<Scalar>> point(const std::vector<Scalar>& values) const {
    const auto fv = free_vars();
    if (values.size() != fv.size()) throw dimension_mismatch("wrong number of family parameters");
    std::vector<Scalar> x(vars.size(), 0);
    for (std::size_t k = 0; k < fv.size(); ++k) {
      if (values[k] == 0) return std::nullopt;
      x[fv[k]] = values[k];
    }
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i].kind == Kind::Fixed) x[i] = vars[i].fixed;
    if (!complete(x)) return std::nullopt;
    return x;
  }

  bool contains(const std::vector<Scalar>& x) const {
    if (x.size() != vars.size()) return false;
    std::vector<Scalar> y(vars.size(), 0);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      switch (vars[i].kind) {
        case Kind::Zero:
          if (x[i] != 0) return false;
          break;
        case Kind::Free:
          if (x[i] == 0) return false;
          y[i] = x[i];
          break;
        case Kind::Fixed:
          if (x[i] != vars[i].fixed) return false;
          y[i] = x[i];
          break;
        case Kind::Solved: break;
      }
    }
    if (!complete(y)) return false;
    return y == x;
  }

  /// Copy with free unknown `var` fixed to `value`.
  Family fix(std::size_t var, const Scalar& value) const {
    Family f = *this;
    f.vars[var].kind = Kind::Fixed;
    f.vars[var].fixed = value;
    return f;
  }

  /// Expression for unknown i in terms of the free parameters.
  std::string expression(std::size_t i) const {
    const auto& v = vars[i];
    switch (v.kind) {
      case Kind::Zero: return "0";
      case Kind::Free: return names[i];
      case Kind::Fixed: return to_string(v.fixed);
      case Kind::Solved: {
        std::string n = substituted(i, true).str(names), d = substituted(i, false).str(names);
        if (d == "1") return n;
        return "(" + n + ")/(" + d + ")";
      }
    }
    return "?";
  }

 private:
  bool complete(std::vector<Scalar>& x) const {
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto& v = vars[*it];
      if (v.kind != Kind::Solved) continue;
      const Scalar den = v.den.eval(x);
      if (den == 0) return false;
      x[*it] = v.num.eval(x) / den;
      if (x[*it] == 0) return false;
    }
    for (const auto& p : nonzero)
      if (p.eval(x) == 0) return false;
    for (const auto& p : unresolved)
      if (p.eval(x) != 0) return false;
    return true;
  }

  /// num or den of unknown i after back-substituting later solutions and
  /// fixed values; only valid when the result stays polynomial (the common
  /// case of constant denominators), otherwise the raw form is returned.
  Poly substituted(std::size_t i, bool numerator) const {
    Poly n = vars[i].num, d = vars[i].den;
    auto pos = std::find(order.begin(), order.end(), i);
    for (auto it = pos == order.end() ? order.end() : pos + 1; it != order.end(); ++it) {
      const auto& w = vars[*it];
      if (!w.den.is_constant()) continue;
      n = n.substitute(*it, w.num, w.den);
      d = d.substitute(*it, w.num, w.den);
      // both were multiplied by den^deg; keep the ratio by rescaling constants
    }
    for (std::size_t k = 0; k < vars.size(); ++k)
      if (vars[k].kind == Kind::Fixed) {
        n = n.substitute(k, Poly(vars[k].fixed), Poly(1));
        d = d.substitute(k, Poly(vars[k].fixed), Poly(1));
      }
    if (d.is_constant() && !d.is_zero()) {
      n = n / d;
      d = Poly(1);
    }
    return numerator ? n : d;
  }
};

/// Exact case analysis: for every zero pattern of the unknowns, substitute the
/// zeros and eliminate unknowns that occur linearly with a monomial
/// coefficient (nonzero on the stratum). Strata whose system reduces to a
/// nonzero monomial are infeasible and dropped.
inline std::vector<Family> solve_strata(const std::vector<Poly>& equations, const std::vector<std::string>& names,
                                        const std::vector<std::size_t>& support) {
  const std::size_t n = names.size();
  std::vector<Family> out;
  const std::size_t k = support.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
    Family f;
    f.names = names;
    f.vars.assign(n, Family::Var{Family::Kind::Zero, 0, {}, {}});
    std::vector<bool> zero(n, true);
    for (std::size_t b = 0; b < k; ++b)
      if (!(mask >> b & 1)) {
        zero[support[b]] = false;
        f.vars[support[b]].kind = Family::Kind::Free;
      }
    std::vector<Poly> eqs;
    for (Poly e : equations) {
      for (std::size_t i = 0; i < n; ++i)
        if (zero[i]) e = e.zero_out(i);
      if (!e.is_zero()) eqs.push_back(e);
    }
    bool feasible = true;
    for (;;) {
      // drop duplicates and zeros
      std::vector<Poly> uniq;
      for (const auto& e : eqs) {
        if (e.is_zero()) continue;
        const Poly m = e.monic_sign();
        if (std::find(uniq.begin(), uniq.end(), m) == uniq.end()) uniq.push_back(m);
      }
      eqs = std::move(uniq);
      if (std::any_of(eqs.begin(), eqs.end(), [](const Poly& e) { return e.is_monomial(); })) {
        feasible = false;
        break;
      }
      if (std::any_of(f.nonzero.begin(), f.nonzero.end(), [](const Poly& p) { return p.is_zero(); })) {
        feasible = false;
        break;
      }
      if (eqs.empty()) break;
      // choose the elimination: constant coefficient first, then short equations
      std::optional<std::pair<std::size_t, std::size_t>> pick;
      std::tuple<int, std::size_t, std::size_t> best{3, 0, 0};
      for (std::size_t ei = 0; ei < eqs.size(); ++ei)
        for (std::size_t x = 0; x < n; ++x) {
          if (zero[x] || f.vars[x].kind != Family::Kind::Free) continue;
          if (eqs[ei].degree_in(x) != 1) continue;
          const Poly c = eqs[ei].coefficients_in(x)[1];
          if (!c.is_monomial()) continue;
          const std::tuple<int, std::size_t, std::size_t> score{c.is_constant() ? 0 : 1, eqs[ei].terms().size(), x};
          if (!pick || score < best) {
            best = score;
            pick = {{ei, x}};
          }
        }
      if (!pick) {
        f.unresolved = eqs;
        break;
      }
      const auto [ei, x] = *pick;
      const auto cs = eqs[ei].coefficients_in(x);
      Poly num = -cs[0], den = cs[1];
      f.vars[x].kind = Family::Kind::Solved;
      f.vars[x].num = num;
      f.vars[x].den = den;
      f.order.push_back(x);
      f.nonzero.push_back(num);
      for (auto& e : eqs) e = e.substitute(x, num, den);
      for (auto& p : f.nonzero) p = p.substitute(x, num, den);
    }
    if (feasible) out.push_back(std::move(f));
  }
  return out;
}

/// Deterministic admissible sample points of a family.
inline std::vector<std::vector<Scalar>> family_samples(const Family& f, std::size_t count) {
  // values whose inverses are also small, so normalizing scalings stay on the grid
  static const std::vector<Scalar> vals = {1, -1, 2, -2, Scalar(1, 2), Scalar(-1, 2)};
  std::vector<std::vector<Scalar>> out;
  const auto fv = f.free_vars();
  detail::for_each_shell(fv.size(), vals.size(), [&](const std::vector<std::size_t>& idx, std::size_t) {
    std::vector<Scalar> v;
    for (auto i : idx) v.push_back(vals[i]);
    if (auto p = f.point(v)) out.push_back(*p);
    return out.size() >= count;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Automorphism enumeration and family membership

/// Visits automorphisms of g on the grid (template branches, GL(d), or the
/// predicate search for groups given by name). Stops when visit returns true;
/// returns true in that case. points counts visited candidates.
inline bool for_each_automorphism(const LieAlgebra& g, const SearchRegion& region,
                                  const std::function<bool(const Matrix&)>& visit, std::size_t* points = nullptr) {
  const auto fam = automorphism_family(g.name);
  std::size_t count = 0;
  bool stopped = false;
  if (fam.kind == AutomorphismFamily::Kind::Predicate) {
    std::size_t pts = 0;
    stopped = find_isomorphism(g.tensor, g.tensor, {}, region, visit, &pts).has_value();
    count = pts;
  } else {
    for (const auto& br : fam.branches) {
      const std::size_t d = br.entries.size();
      std::vector<Expr> entries;
      for (const auto& row : br.entries)
        for (const auto& e : row) entries.push_back(Expr::parse(e));
      std::vector<Predicate> ps;
      for (const auto& c : br.constraints) ps.push_back(Predicate::parse(c));
      stopped = detail::for_each_shell(br.params.size(), region.values.size(),
                                       [&](const std::vector<std::size_t>& idx, std::size_t) {
                                         if (++count > region.max_points) return true;
                                         Env env;
                                         for (std::size_t k = 0; k < idx.size(); ++k) env[br.params[k]] = region.values[idx[k]];
                                         Matrix a(d);
                                         try {
                                           for (std::size_t k = 0; k < d * d; ++k) a(k / d, k % d) = entries[k].eval(env);
                                           env["det"] = determinant(a);
                                           if (env["det"] == 0 || !first_violation(ps, env).empty()) return false;
                                         } catch (const error&) {
                                           return false;
                                         }
                                         return visit(a);
                                       });
      if (stopped) break;
    }
    if (count > region.max_points) {
      count = region.max_points;
      stopped = false;
    }
  }
  if (points) *points = count;
  return stopped;
}

/// Searches for A in Aut(g) with transform(b, A) in the family. The returned
/// witness has been re-checked exactly.
inline std::optional<Matrix> find_member_witness(const LieAlgebra& g, const Bialgebra& b, const Family& f,
                                                 const SearchRegion& region) {
  if (f.contains(unknowns_of(b))) return Matrix::identity(b.dim());
  // automorphism invariants: which blocks vanish, and the dual derived dimension
  const std::size_t d = b.dim(), nf = d * d * (d - 1) / 2;
  auto block_zero = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      if (f.vars[i].kind != Family::Kind::Zero) return false;
    return true;
  };
  if (block_zero(0, nf) != b.gstar.is_zero() || block_zero(nf, nf + d) != b.alpha.is_zero() ||
      block_zero(nf + d, nf + 2 * d) != b.beta.is_zero())
    return std::nullopt;
  const auto fs = family_samples(f, 1);
  if (fs.empty() || derived_dimension(assemble(g.tensor, fs.front()).gstar) != derived_dimension(b.gstar))
    return std::nullopt;
  std::optional<Matrix> hit;
  for_each_automorphism(g, region, [&](const Matrix& a) {
    if (f.contains(unknowns_of(transform_unchecked(b, a)))) {
      hit = a;
      return true;
    }
    return false;
  });
  if (hit && !(is_automorphism(g, *hit) && f.contains(unknowns_of(transform(b, *hit)))))
    throw std::logic_error("membership witness failed re-check");
  return hit;
}

// ---------------------------------------------------------------------------
// Step 2: transformation matrix B

struct Step2Result {
  Identification identification;  // dual algebra ~ g' with isomorphism C
  Matrix b;                       // B = A^{-t} C^{-1}
  Scalar det_b;
  Bialgebra transformed;          // transform(bialgebra, A); its dual is g'.i
};

/// Whether (A^{-t})^i_m Xt~^m A^{-1} = (B^t A)^{-1} (B^i_k Xt'^k) B^t for all i,
/// with Xt~ and Xt' the transposed adjoint matrices of the dual solution and g'.
inline bool satisfies_b_equation(const StructureTensor& gstar, const StructureTensor& gprime, const Matrix& a,
                                 const Matrix& b) {
  const std::size_t d = gstar.dim();
  const Matrix ainv = inverse(a);
  const Matrix ait = ainv.transpose();
  const Matrix left_factor = inverse(b.transpose() * a);
  const Matrix bt = b.transpose();
  const auto xs = adjoint_x(gstar);
  const auto xp = adjoint_x(gprime);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix lhs(d), mid(d);
    for (std::size_t m = 0; m < d; ++m) lhs += xs[m].transpose() * ait(i, m);
    lhs = lhs * ainv;
    for (std::size_t k = 0; k < d; ++k) mid += xp[k].transpose() * b(i, k);
    if (!(lhs == left_factor * mid * bt)) return false;
  }
  return true;
}

/// For a verified bialgebra (g, g*) and A in Aut(g): identifies g* with a
/// catalog g' (isomorphism C), then B = A^{-t} C^{-1} maps g' onto the
/// transformed dual g'.i. Throws no_match when g* cannot be identified, and
/// std::logic_error if B fails the B-equation or the g' -> g'.i isomorphism.
inline Step2Result step2_matrix_b(const Bialgebra& bialg, const Matrix& a, const SearchRegion& region = {}) {
  if (!is_automorphism(bialg.g, a)) throw not_automorphism("A is not an automorphism of g");
  Step2Result r{identify_dual(bialg.gstar, region), Matrix(), 0, transform(bialg, a)};
  r.b = inverse(a).transpose() * inverse(r.identification.c);
  r.det_b = determinant(r.b);
  if (!satisfies_b_equation(bialg.gstar, r.identification.algebra.tensor, a, r.b))
    throw std::logic_error("B does not satisfy the B-equation");
  if (!is_isomorphism(r.identification.algebra.tensor, r.transformed.gstar, r.b))
    throw std::logic_error("B is not an isomorphism from g' to the transformed dual");
  return r;
}

// ---------------------------------------------------------------------------
// Step 3: reduction modulo Aut(g)

namespace detail {

inline std::size_t height(const std::vector<Scalar>& x) {
  std::size_t h = 0;
  for (const auto& v : x) {
    if (v == 0) continue;
    h += 1 + static_cast<std::size_t>(boost::multiprecision::abs(boost::multiprecision::numerator(v)).convert_to<unsigned long>()) +
         static_cast<std::size_t>(boost::multiprecision::denominator(v).convert_to<unsigned long>());
  }
  return h;
}

}  // namespace detail

/// Point candidates: keeps one representative per class found by
/// search_witness, preferring the simplest candidate (fewest nonzero entries,
/// then smallest entries, then fewest negative dual constants) in each class.
inline std::vector<Bialgebra> step3_reduce(std::vector<Bialgebra> candidates, const SearchRegion& region = {}) {
  std::stable_sort(candidates.begin(), candidates.end(), [](const Bialgebra& x, const Bialgebra& y) {
    const auto ux = unknowns_of(x), uy = unknowns_of(y);
    const auto nx = std::count_if(ux.begin(), ux.end(), [](const Scalar& v) { return v != 0; });
    const auto ny = std::count_if(uy.begin(), uy.end(), [](const Scalar& v) { return v != 0; });
    if (nx != ny) return nx < ny;
    const auto hx = detail::height(ux), hy = detail::height(uy);
    if (hx != hy) return hx < hy;
    // then fewer negative dual structure constants
    const auto nd = ux.size() - 2 * x.dim();
    auto negatives = [nd](const std::vector<Scalar>& u) {
      return std::count_if(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(nd), [](const Scalar& v) { return v < 0; });
    };
    return negatives(ux) < negatives(uy);
  });
  std::vector<Bialgebra> reps;
  for (const auto& c : candidates) {
    bool covered = false;
    for (const auto& r : reps)
      if (search_witness(c, r, region).equivalent()) {
        covered = true;
        break;
      }
    if (!covered) reps.push_back(c);
  }
  return reps;
}

struct ReductionLog {
  std::vector<std::string> lines;
};

/// Family candidates for one g: normalizes free parameters to constants
/// (1 or -1, then 2 or -2, preferring fewer negative dual constants) whenever
/// every sample of the family can be moved into the
/// normalized family by an automorphism, splits on sign when two constants are
/// needed, and drops families whose samples all land in an earlier
/// representative. Families are processed smallest support first.
inline std::vector<Family> step3_reduce(const LieAlgebra& g, std::vector<Family> families, const SearchRegion& region,
                                        std::size_t samples_per_family = 6, ReductionLog* log = nullptr) {
  auto note = [&](const std::string& s) {
    if (log) log->lines.push_back(s);
  };
  std::stable_sort(families.begin(), families.end(), [](const Family& x, const Family& y) {
    if (x.support() != y.support()) return x.support() < y.support();
    return x.free_vars().size() < y.free_vars().size();
  });
  auto all_map_into = [&](const std::vector<std::vector<Scalar>>& pts, const std::vector<Family>& targets) {
    for (const auto& p : pts) {
      const Bialgebra b = assemble(g.tensor, p);
      bool ok = false;
      for (const auto& t : targets)
        if (find_member_witness(g, b, t, region)) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    return true;
  };

  std::vector<Family> reps;
  for (const auto& fam : families) {
    const auto pts = family_samples(fam, samples_per_family);
    if (pts.empty()) continue;
    if (!reps.empty() && all_map_into(pts, reps)) {
      note("family absorbed by an earlier representative");
      continue;
    }
    // normalize free parameters one at a time
    std::vector<Family> current = {fam};
    for (std::size_t var : fam.free_vars()) {
      std::vector<Family> next;
      for (const auto& cur : current) {
        const auto cur_pts = family_samples(cur, samples_per_family);
        bool done = false;
        // of v and -v both valid, keep the one with fewer negative dual constants
        for (const Scalar mag : {Scalar(1), Scalar(2)}) {
          std::optional<Family> best;
          std::ptrdiff_t best_neg = 0;
          for (const Scalar v : {mag, Scalar(-mag)}) {
            Family fixed = cur.fix(var, v);
            const auto one = family_samples(fixed, 1);
            if (one.empty() || !all_map_into(cur_pts, {fixed})) continue;
            const auto nd = static_cast<std::ptrdiff_t>(one[0].size() - 2 * g.dim);
            const auto neg = std::count_if(one[0].begin(), one[0].begin() + nd, [](const Scalar& x) { return x < 0; });
            if (!best || neg < best_neg) {
              best = std::move(fixed);
              best_neg = neg;
            }
          }
          if (best) {
            note(fam.names[var] + " normalized to " + to_string(best->vars[var].fixed));
            next.push_back(std::move(*best));
            done = true;
            break;
          }
        }
        if (!done) {
          Family plus = cur.fix(var, 1), minus = cur.fix(var, -1);
          if (!family_samples(plus, 1).empty() && !family_samples(minus, 1).empty() &&
              all_map_into(cur_pts, {plus, minus})) {
            note(fam.names[var] + " normalized to 1 or -1");
            next.push_back(plus);
            next.push_back(minus);
            done = true;
          }
        }
        if (!done) {
          note(fam.names[var] + " kept as a parameter");
          next.push_back(cur);
        }
      }
      current = std::move(next);
    }
    for (auto& c : current) {
      const auto cpts = family_samples(c, samples_per_family);
      if (!reps.empty() && all_map_into(cpts, reps)) continue;
      reps.push_back(std::move(c));
    }
  }
  return reps;
}

// ---------------------------------------------------------------------------
// Classification rows

struct ClassificationRow {
  std::string g;
  std::string gstar;  // class name, with a variant suffix when not in catalog form
  Family family;      // free unknowns are the row parameters
  std::vector<std::string> params;
  std::vector<std::string> constraints;
  std::string gstar_relations;
  std::string x0;
  std::string phi0;

  Bialgebra instantiate(const StructureTensor& gt, const std::vector<Scalar>& values) const {
    auto p = family.point(values);
    if (!p) throw constraint_violation("parameters outside the row's admissible set");
    return assemble(gt, *p);
  }
};

namespace detail {

inline std::string roman(std::size_t n) {
  static const char* r[] = {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii"};
  return n < 12 ? r[n] : std::to_string(n + 1);
}

inline std::string linear_combination(const std::vector<std::string>& coeffs, const std::string& sym,
                                      bool upper_index) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == "0") continue;
    std::string basis = sym + (upper_index ? "^" : "_") + std::to_string(i + 1);
    std::string term = coeffs[i] == "1" ? basis : (coeffs[i] == "-1" ? "-" + basis : "(" + coeffs[i] + ")" + basis);
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

/// Renders a family as a table row for g, identifying the dual at a sample.
inline ClassificationRow make_row(const LieAlgebra& g, const Family& f, std::map<std::string, std::size_t>& variants) {
  const std::size_t d = g.dim;
  ClassificationRow row;
  row.g = g.label();
  row.family = f;
  for (auto i : f.free_vars()) {
    row.params.push_back(f.names[i]);
    row.constraints.push_back(f.names[i] + " != 0");
  }
  auto fixed_in = [&](Poly p) {
    for (std::size_t k = 0; k < f.vars.size(); ++k)
      if (f.vars[k].kind == Family::Kind::Fixed) p = p.substitute(k, Poly(f.vars[k].fixed), Poly(1));
    return p;
  };
  // monomials in the free parameters are implied by the parameters being nonzero
  for (const auto& p : f.nonzero)
    if (const Poly q = fixed_in(p); !q.is_monomial()) row.constraints.push_back(q.str(f.names) + " != 0");
  for (const auto& p : f.unresolved) row.constraints.push_back(fixed_in(p).str(f.names) + " == 0");

  const auto samples = family_samples(f, 1);
  if (!samples.empty()) {
    const Bialgebra b = assemble(g.tensor, samples.front());
    const AlgebraClass cls = classify_algebra(b.gstar);
    std::string name = cls.name;
    const LieAlgebra ref = lookup(cls.name, cls.param);
    bool catalog_form = f.free_vars().empty() && ref.tensor == b.gstar;
    if (!catalog_form) {
      const std::size_t k = variants[cls.name]++;
      name += "." + detail::roman(k);
    }
    row.gstar = name;
  }

  std::vector<std::string> rel;
  std::size_t p = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      std::vector<std::string> coeffs;
      for (std::size_t k = 0; k < d; ++k) coeffs.push_back(f.expression(p++));
      std::string rhs = detail::linear_combination(coeffs, "X~", true);
      if (rhs != "0")
        rel.push_back("[X~^" + std::to_string(i + 1) + ", X~^" + std::to_string(j + 1) + "] = " + rhs);
    }
  row.gstar_relations = rel.empty() ? "[X~^i, X~^j] = 0" : "";
  for (std::size_t i = 0; i < rel.size(); ++i) row.gstar_relations += (i ? ", " : "") + rel[i];
  std::vector<std::string> al, be;
  for (std::size_t i = 0; i < d; ++i) al.push_back(f.expression(p++));
  for (std::size_t i = 0; i < d; ++i) be.push_back(f.expression(p++));
  row.x0 = detail::linear_combination(al, "X", false);
  row.phi0 = detail::linear_combination(be, "X~", true);
  return row;
}

struct ClassificationResult {
  std::vector<ClassificationRow> rows;
  std::vector<Family> strata;  // all feasible strata before reduction
  ReductionLog log;
};

/// Full Step 1-3 classification for a two-dimensional g: exact stratum
/// solution of the residual system, identification of every dual, and
/// reduction modulo the automorphism group on the search grid.
inline SearchRegion reduction_region() { return SearchRegion{rational_grid(2, 2), 200000}; }

inline ClassificationResult classify_d2(const LieAlgebra& g, const SearchRegion& region = reduction_region()) {
  if (g.dim != 2) throw dimension_mismatch("classify_d2 needs a two-dimensional algebra");
  const auto names = unknown_names(2);
  std::vector<Poly> u;
  for (std::size_t i = 0; i < names.size(); ++i) u.push_back(Poly::var(i));
  const auto eqs = symbolic_system(g.tensor, u);
  std::vector<std::size_t> support(names.size());
  for (std::size_t i = 0; i < support.size(); ++i) support[i] = i;
  ClassificationResult res;
  res.strata = solve_strata(eqs, names, support);
  // soundness: every sampled stratum point verifies
  for (const auto& f : res.strata)
    for (const auto& p : family_samples(f, 3))
      if (!verify(assemble(g.tensor, p)).pass()) throw std::logic_error("stratum sample fails verification");
  const auto reps = step3_reduce(g, res.strata, region, 6, &res.log);
  std::map<std::string, std::size_t> variants;
  for (const auto& f : reps) res.rows.push_back(make_row(g, f, variants));
  return res;
}

/// Guided mode (any dimension): the unknowns outside `support` are set to
/// zero and the remaining system is solved stratum by stratum.
inline std::vector<Family> solve_guided(const LieAlgebra& g, const std::vector<std::size_t>& support) {
  const std::size_t d = g.dim;
  const auto names = unknown_names(d);
  std::vector<Poly> u(names.size());
  for (auto i : support) u[i] = Poly::var(i);
  return solve_strata(symbolic_system(g.tensor, u), names, support);
}

/// Support (nonzero unknowns) of a concrete bialgebra.
inline std::vector<std::size_t> support_of(const Bialgebra& b) {
  const auto u = unknowns_of(b);
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0) s.push_back(i);
  return s;
}

// ---------------------------------------------------------------------------
// Published classification rows

struct TableParam {
  enum class Kind { Algebra, Scalar, Discrete };
  std::string name;
  Kind kind = Kind::Scalar;
  std::vector<Scalar> samples;
};

struct TableRow {
  struct Constant {
    std::size_t i, j, k;  // zero-based, i < j
    std::string value;    // expression in the row parameters
  };
  std::string id;
  int table = 0;
  std::string g;
  std::string g_param;  // expression, empty when g is not parametrized
  std::string gstar_name;
  std::vector<Constant> gstar;
  std::vector<std::string> alpha, beta;
  std::vector<TableParam> params;
  std::vector<std::string> constraints;

  std::size_t dim() const { return alpha.size(); }

  /// Throws constraint_violation for inadmissible parameters.
  Bialgebra instantiate(const Env& env) const {
    std::vector<Predicate> ps;
    for (const auto& c : constraints) ps.push_back(Predicate::parse(c));
    if (auto bad = first_violation(ps, env); !bad.empty()) throw constraint_violation("row " + id + ": violates " + bad);
    std::optional<Scalar> gp;
    if (!g_param.empty()) gp = Expr::parse(g_param).eval(env);
    const LieAlgebra ga = lookup(g, gp);
    const std::size_t d = ga.dim;
    Bialgebra b{ga.tensor, StructureTensor(d), Vector(d), Vector(d)};
    for (const auto& c : gstar) b.gstar.set(c.i, c.j, c.k, Expr::parse(c.value).eval(env));
    for (std::size_t i = 0; i < d; ++i) {
      b.alpha[i] = Expr::parse(alpha[i]).eval(env);
      b.beta[i] = Expr::parse(beta[i]).eval(env);
    }
    return b;
  }

  /// Cartesian product of the parameter samples (first `per_param` of each).
  std::vector<Env> sample_envs(std::optional<std::size_t> per_param = std::nullopt) const {
    std::vector<Env> out = {Env{}};
    for (const auto& p : params) {
      std::vector<Env> next;
      const std::size_t n = per_param ? std::min(*per_param, p.samples.size()) : p.samples.size();
      for (const auto& e : out)
        for (std::size_t s = 0; s < n; ++s) {
          Env x = e;
          x[p.name] = p.samples[s];
          next.push_back(std::move(x));
        }
      out = std::move(next);
    }
    return out;
  }
};

inline std::string env_string(const Env& env) {
  std::string s;
  for (const auto& [k, v] : env) s += (s.empty() ? "" : ", ") + k + "=" + to_string(v);
  return s.empty() ? "-" : s;
}

struct SampleResult {
  Env env;
  bool skipped = false;
  std::string note;  // skip reason
  std::optional<VerificationReport> report;
};

struct RowResult {
  std::string id;
  std::vector<SampleResult> samples;

  std::size_t checked() const {
    return std::count_if(samples.begin(), samples.end(), [](const SampleResult& s) { return !s.skipped; });
  }
  bool pass() const {
    if (checked() == 0) return false;
    for (const auto& s : samples)
      if (!s.skipped && !s.report->pass()) return false;
    return true;
  }
};

struct TableReport {
  std::vector<RowResult> rows;
  std::size_t passed() const {
    return std::count_if(rows.begin(), rows.end(), [](const RowResult& r) { return r.pass(); });
  }
  bool pass() const { return passed() == rows.size(); }
};

/// Instantiates every row at every admissible sample and verifies it.
/// Constraint violations are skipped and noted, not failed.
inline TableReport verify_tables(const std::vector<TableRow>& rows, std::optional<std::size_t> per_param = std::nullopt) {
  TableReport rep;
  for (const auto& row : rows) {
    RowResult rr{row.id, {}};
    for (const auto& env : row.sample_envs(per_param)) {
      SampleResult s{env, false, {}, std::nullopt};
      try {
        s.report = verify(row.instantiate(env));
      } catch (const constraint_violation& e) {
        s.skipped = true;
        s.note = e.what();
      } catch (const error& e) {
        // e.g. a division by zero at an excluded parameter value
        s.skipped = true;
        s.note = e.what();
      }
      rr.samples.push_back(std::move(s));
    }
    rep.rows.push_back(std::move(rr));
  }
  return rep;
}

}  // namespace jlb
