#pragma once

#include "jlb/adjoint.hpp"
#include "jlb/expr.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace jlb {

struct unknown_algebra : error {
  using error::error;
};
struct parameter_error : error {
  using error::error;
};
struct constraint_violation : error {
  using error::error;
};

/// Cataloged real Lie algebra with its structure constants.
struct LieAlgebra {
  std::string name;
  std::size_t dim = 0;
  std::optional<Scalar> param;
  StructureTensor tensor;

  std::string label() const { return param ? name + "(a=" + to_string(*param) + ")" : name; }
};

/// Static description of one catalog row. Brackets are listed as
/// {i, j, k, coefficient expression in "a"} with zero-based i < j.
struct CatalogEntry {
  struct Bracket {
    std::size_t i, j, k;
    const char* coeff;
  };
  const char* name;
  std::size_t dim;
  bool parametrized;
  std::vector<const char*> constraints;
  std::vector<Bracket> brackets;
};

inline const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"A1", 2, false, {}, {}},
      {"A2", 2, false, {}, {{0, 1, 0, "1"}}},
      {"I", 3, false, {}, {}},
      {"II", 3, false, {}, {{1, 2, 0, "1"}}},
      {"III", 3, false, {}, {{0, 1, 1, "-1"}, {0, 1, 2, "-1"}, {0, 2, 1, "-1"}, {0, 2, 2, "-1"}}},
      {"IV", 3, false, {}, {{0, 1, 1, "-1"}, {0, 1, 2, "1"}, {0, 2, 2, "-1"}}},
      {"V", 3, false, {}, {{0, 1, 1, "-1"}, {0, 2, 2, "-1"}}},
      {"VI_0", 3, false, {}, {{0, 2, 1, "1"}, {1, 2, 0, "1"}}},
      {"VI_a", 3, true, {"a > 0", "a != 1"}, {{0, 1, 1, "-a"}, {0, 1, 2, "-1"}, {0, 2, 1, "-1"}, {0, 2, 2, "-a"}}},
      {"VII_0", 3, false, {}, {{0, 2, 1, "-1"}, {1, 2, 0, "1"}}},
      {"VII_a", 3, true, {"a > 0"}, {{0, 1, 1, "-a"}, {0, 1, 2, "1"}, {0, 2, 1, "-1"}, {0, 2, 2, "-a"}}},
      {"VIII", 3, false, {}, {{0, 1, 2, "-1"}, {0, 2, 1, "-1"}, {1, 2, 0, "1"}}},
      {"IX", 3, false, {}, {{0, 1, 2, "1"}, {0, 2, 1, "-1"}, {1, 2, 0, "1"}}},
  };
  return entries;
}

/// Accepts the canonical names plus common spellings ("VI0", "VIa", "VI_a").
inline std::string canonical_name(std::string_view raw) {
  std::string s;
  for (char c : raw)
    if (c != ' ' && c != '_') s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  static const std::vector<std::pair<const char*, const char*>> aliases = {
      {"A1", "A1"},  {"A2", "A2"},   {"I", "I"},         {"II", "II"},       {"III", "III"},
      {"IV", "IV"},  {"V", "V"},     {"VI0", "VI_0"},    {"VIA", "VI_a"},    {"VII0", "VII_0"},
      {"VIIA", "VII_a"}, {"VIII", "VIII"}, {"IX", "IX"},
  };
  for (const auto& [k, v] : aliases)
    if (s == k) return v;
  throw unknown_algebra("unknown Lie algebra '" + std::string(raw) + "'");
}

inline const CatalogEntry& catalog_entry(std::string_view name) {
  const std::string n = canonical_name(name);
  for (const auto& e : catalog_entries())
    if (n == e.name) return e;
  throw unknown_algebra("unknown Lie algebra '" + std::string(name) + "'");
}

inline std::vector<Predicate> parse_predicates(const std::vector<const char*>& texts) {
  std::vector<Predicate> out;
  for (const char* t : texts) out.push_back(Predicate::parse(t));
  return out;
}

/// Structure constants of a cataloged algebra. Throws unknown_algebra,
/// parameter_error (missing or extra parameter) or constraint_violation.
inline LieAlgebra lookup(std::string_view name, std::optional<Scalar> param = std::nullopt) {
  const CatalogEntry& e = catalog_entry(name);
  if (e.parametrized && !param) throw parameter_error(std::string(e.name) + " requires a parameter a");
  if (!e.parametrized && param) throw parameter_error(std::string(e.name) + " takes no parameter");
  Env env;
  if (param) env["a"] = *param;
  if (auto bad = first_violation(parse_predicates(e.constraints), env); !bad.empty())
    throw constraint_violation(std::string(e.name) + ": parameter violates " + bad);
  LieAlgebra g{e.name, e.dim, param, StructureTensor(e.dim)};
  for (const auto& b : e.brackets) g.tensor.set(b.i, b.j, b.k, Expr::parse(b.coeff).eval(env));
  return g;
}

inline std::vector<std::string> catalog_names(std::optional<std::size_t> dim = std::nullopt) {
  std::vector<std::string> out;
  for (const auto& e : catalog_entries())
    if (!dim || e.dim == *dim) out.push_back(e.name);
  return out;
}

// ---------------------------------------------------------------------------
// Automorphisms

/// Row-action predicate: A_i^m f_mn^k A_j^n = f_ij^l A_l^k for all i, j, k.
/// Both the index form and the adjoint form A Y^k A^t = Y^i A_i^k are evaluated
/// and must agree. Throws singular_matrix for det A = 0.
inline bool is_automorphism(const StructureTensor& f, const Matrix& a) {
  const std::size_t d = f.dim();
  if (a.rows() != d || a.cols() != d) throw dimension_mismatch("automorphism matrix has the wrong size");
  if (determinant(a) == 0) throw singular_matrix("automorphism candidate is singular");

  bool index_ok = true;
  for (std::size_t i = 0; i < d && index_ok; ++i)
    for (std::size_t j = 0; j < d && index_ok; ++j)
      for (std::size_t k = 0; k < d && index_ok; ++k) {
        Scalar lhs = 0, rhs = 0;
        for (std::size_t m = 0; m < d; ++m) {
          if (a(i, m) == 0) continue;
          for (std::size_t n = 0; n < d; ++n) lhs += a(i, m) * f(m, n, k) * a(j, n);
        }
        for (std::size_t l = 0; l < d; ++l) rhs += f(i, j, l) * a(l, k);
        if (lhs != rhs) index_ok = false;
      }

  const auto ys = adjoint_y(f);
  bool matrix_ok = true;
  const Matrix at = a.transpose();
  for (std::size_t k = 0; k < d && matrix_ok; ++k) {
    Matrix rhs(d);
    for (std::size_t i = 0; i < d; ++i) rhs += ys[i] * a(i, k);
    if (a * ys[k] * at != rhs) matrix_ok = false;
  }
  if (index_ok != matrix_ok) throw std::logic_error("automorphism index and matrix forms disagree");
  return index_ok;
}

inline bool is_automorphism(const LieAlgebra& g, const Matrix& a) { return is_automorphism(g.tensor, a); }

/// One matrix template of an automorphism family. Entries are expressions in
/// the branch parameters; constraints may also use "det" (the determinant).
struct AutomorphismBranch {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::vector<std::string>> entries;
  std::vector<std::string> constraints;
};

struct AutomorphismFamily {
  enum class Kind {
    Template,  // explicit parametrized matrices
    Predicate  // group given by name only; membership decided by is_automorphism
  };
  std::string algebra;
  Kind kind = Kind::Template;
  std::string group;  // e.g. "GL(3,R)", "SL(2,R)"; empty for plain templates
  std::vector<AutomorphismBranch> branches;
};

namespace detail {

inline AutomorphismBranch general_linear(std::size_t d) {
  AutomorphismBranch b{"main", {}, std::vector<std::vector<std::string>>(d, std::vector<std::string>(d)), {"det != 0"}};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::string p = "m" + std::to_string(i + 1) + std::to_string(j + 1);
      b.params.push_back(p);
      b.entries[i][j] = p;
    }
  return b;
}

}  // namespace detail

inline AutomorphismFamily automorphism_family(std::string_view name) {
  const std::string n = canonical_name(name);
  using K = AutomorphismFamily::Kind;
  const std::vector<std::string> abcd = {"a", "b", "c", "d"};
  const std::vector<std::string> bcde = {"b", "c", "d", "e"};
  if (n == "A1") return {n, K::Template, "GL(2,R)", {detail::general_linear(2)}};
  if (n == "I") return {n, K::Template, "GL(3,R)", {detail::general_linear(3)}};
  if (n == "A2") return {n, K::Template, "", {{"main", {"a", "b"}, {{"a", "0"}, {"b", "1"}}, {"a != 0"}}}};
  if (n == "II")
    return {n, K::Template, "",
            {{"main",
              {"a", "b", "c", "d", "e", "f"},
              {{"b*f - c*e", "0", "0"}, {"a", "b", "c"}, {"d", "e", "f"}},
              {"b*f != c*e"}}}};
  if (n == "III")
    return {n, K::Template, "", {{"main", abcd, {{"1", "a", "b"}, {"0", "c", "d"}, {"0", "d", "c"}}, {"c != d", "c != -d"}}}};
  if (n == "IV")
    return {n, K::Template, "", {{"main", abcd, {{"1", "a", "b"}, {"0", "c", "d"}, {"0", "0", "c"}}, {"c != 0"}}}};
  if (n == "V")
    return {n, K::Template, "",
            {{"main",
              {"a", "b", "c", "d", "e", "f"},
              {{"1", "a", "b"}, {"0", "c", "d"}, {"0", "e", "f"}},
              {"c*f != e*d"}}}};
  if (n == "VI_0")
    return {n, K::Template, "",
            {{"main", abcd, {{"a", "b", "0"}, {"b", "a", "0"}, {"c", "d", "1"}}, {"a != b", "a != -b"}},
             {"reflected", abcd, {{"a", "b", "0"}, {"-b", "-a", "0"}, {"c", "d", "-1"}}, {"a != b", "a != -b"}}}};
  if (n == "VI_a")
    return {n, K::Template, "", {{"main", bcde, {{"1", "b", "c"}, {"0", "d", "e"}, {"0", "e", "d"}}, {"d != e", "d != -e"}}}};
  if (n == "VII_0")
    return {n, K::Template, "",
            {{"main", abcd, {{"a", "b", "0"}, {"-b", "a", "0"}, {"c", "d", "1"}}, {"a^2 + b^2 != 0"}},
             {"reflected", abcd, {{"a", "b", "0"}, {"b", "-a", "0"}, {"c", "d", "-1"}}, {"a^2 + b^2 != 0"}}}};
  if (n == "VII_a")
    return {n, K::Template, "",
            {{"main", bcde, {{"1", "b", "c"}, {"0", "d", "-e"}, {"0", "e", "d"}}, {"d^2 + e^2 != 0"}}}};
  if (n == "VIII") return {n, K::Predicate, "SL(2,R)", {}};
  if (n == "IX") return {n, K::Predicate, "SO(3)", {}};
  throw unknown_algebra("no automorphism family for '" + std::string(name) + "'");
}

inline const AutomorphismBranch& find_branch(const AutomorphismFamily& fam, std::string_view branch) {
  if (fam.kind == AutomorphismFamily::Kind::Predicate)
    throw parameter_error(fam.algebra + ": automorphisms are defined by the bracket-preserving predicate only");
  if (branch.empty()) return fam.branches.front();
  for (const auto& b : fam.branches)
    if (b.name == branch) return b;
  // numeric branch index, 1-based
  if (std::all_of(branch.begin(), branch.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const std::size_t k = std::stoul(std::string(branch));
    if (k >= 1 && k <= fam.branches.size()) return fam.branches[k - 1];
  }
  throw parameter_error(fam.algebra + ": no automorphism branch '" + std::string(branch) + "'");
}

/// Evaluates a branch template; checks every constraint ("det" is bound to the
/// determinant). Throws constraint_violation or singular_matrix.
inline Matrix instantiate(const AutomorphismBranch& b, const Env& env) {
  const std::size_t d = b.entries.size();
  for (const auto& p : b.params)
    if (!env.count(p)) throw parameter_error("missing automorphism parameter '" + p + "'");
  Matrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = Expr::parse(b.entries[i][j]).eval(env);
  Env full = env;
  full["det"] = determinant(m);
  std::vector<Predicate> ps;
  for (const auto& c : b.constraints) ps.push_back(Predicate::parse(c));
  if (auto bad = first_violation(ps, full); !bad.empty())
    throw constraint_violation("automorphism parameters violate " + bad);
  if (full["det"] == 0) throw singular_matrix("automorphism sample is singular");
  return m;
}

inline Matrix automorphism_sample(std::string_view algebra, std::string_view branch, const Env& env) {
  const auto fam = automorphism_family(algebra);
  return instantiate(find_branch(fam, branch), env);
}

/// Whether the assignment satisfies the branch constraints (no throw).
inline bool admissible(const AutomorphismBranch& b, const Env& env) {
  try {
    instantiate(b, env);
    return true;
  } catch (const constraint_violation&) {
    return false;
  } catch (const singular_matrix&) {
    return false;
  }
}

/// Cayley transform (I - D)^-1 (I + D) of the inner derivation D = ad_v,
/// written in the row-action convention D_i^j = v^k f_ki^j. For the semisimple
/// algebras VIII and IX this is a rational point of the automorphism group.
inline Matrix cayley_inner_automorphism(const StructureTensor& f, const Vector& v) {
  const std::size_t d = f.dim();
  Matrix dm(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) dm(i, j) += v[k] * f(k, i, j);
  const Matrix id = Matrix::identity(d);
  return inverse(id - dm) * (id + dm);
}

}  // namespace jlb
