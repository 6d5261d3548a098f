#pragma once

#include "jlb/classifier.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace jlb {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Documents
//
// {
//   "alpha": ["0", "-1", "-1"],            coefficients of X0 = alpha^i X_i
//   "beta":  ["-2", "0", "0"],             coefficients of phi0 = beta_i X~^i
//   "dim": 3,
//   "g": {"name": "III"},                  catalog reference ({"name", "param"?})
//   "gstar": [{"i": 1, "j": 2, "k": 1, "value": "1"}, ...]
// }
//
// Either algebra may be a catalog reference or an explicit list of nonzero
// constants f^ij_k with 1-based indices and i < j; the loader completes the
// antisymmetry. Rationals are strings "p/q" or "n".

struct AlgebraSpec {
  std::optional<std::string> name;  // catalog reference
  std::optional<Scalar> param;
  StructureTensor tensor;           // resolved constants

  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

struct BialgebraDocument {
  std::size_t dim = 0;
  AlgebraSpec g, gstar;
  Vector alpha, beta;

  Bialgebra bialgebra() const { return {g.tensor, gstar.tensor, alpha, beta}; }

  static BialgebraDocument from(const Bialgebra& b) {
    BialgebraDocument d;
    d.dim = b.dim();
    d.g.tensor = b.g;
    if (auto m = catalog_match(b.g)) {
      d.g.name = m->name;
      d.g.param = m->param;
    }
    d.gstar.tensor = b.gstar;
    d.alpha = b.alpha;
    d.beta = b.beta;
    return d;
  }
};

namespace detail {

[[noreturn]] inline void field_error(const std::string& field, const std::string& what) {
  throw parse_error("field '" + field + "': " + what);
}

inline Scalar scalar_field(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (!j.is_string()) field_error(field, "expected a rational string such as \"3/2\"");
  try {
    return parse_scalar(j.get<std::string>());
  } catch (const error& e) {
    field_error(field, e.what());
  }
}

inline std::size_t index_field(const json& j, const std::string& field, std::size_t dim) {
  if (!j.is_number_integer()) field_error(field, "expected an integer index");
  const long long v = j.get<long long>();
  if (v < 1 || v > static_cast<long long>(dim))
    field_error(field, "index " + std::to_string(v) + " outside 1.." + std::to_string(dim));
  return static_cast<std::size_t>(v - 1);
}

inline AlgebraSpec algebra_field(const json& j, const std::string& field, std::size_t dim) {
  AlgebraSpec a;
  a.tensor = StructureTensor(dim);
  if (j.is_object()) {
    if (!j.contains("name") || !j["name"].is_string()) field_error(field + ".name", "expected a catalog name");
    try {
      a.name = canonical_name(j["name"].get<std::string>());
    } catch (const error& e) {
      field_error(field + ".name", e.what());
    }
    if (j.contains("param")) a.param = scalar_field(j["param"], field + ".param");
    LieAlgebra la;
    try {
      la = lookup(*a.name, a.param);
    } catch (const error& e) {
      field_error(field, e.what());
    }
    if (la.dim != dim) field_error(field, *a.name + " has dimension " + std::to_string(la.dim));
    a.tensor = la.tensor;
    return a;
  }
  if (!j.is_array()) field_error(field, "expected a catalog reference or a list of constants");
  for (std::size_t n = 0; n < j.size(); ++n) {
    const std::string f = field + "[" + std::to_string(n) + "]";
    const json& c = j[n];
    if (!c.is_object()) field_error(f, "expected {i, j, k, value}");
    for (const char* key : {"i", "j", "k", "value"})
      if (!c.contains(key)) field_error(f + "." + key, "missing");
    const std::size_t i = index_field(c["i"], f + ".i", dim), jj = index_field(c["j"], f + ".j", dim),
                      k = index_field(c["k"], f + ".k", dim);
    if (i >= jj) field_error(f, "constants are listed with i < j");
    if (a.tensor(i, jj, k) != 0) field_error(f, "duplicate constant");
    a.tensor.set(i, jj, k, scalar_field(c["value"], f + ".value"));
  }
  return a;
}

inline Vector vector_field(const json& j, const std::string& field, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) field_error(field, "expected a list of " + std::to_string(dim) + " rationals");
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = scalar_field(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

/// Parses text, reporting syntax errors with line and column.
inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw parse_error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json constants_json(const StructureTensor& t) {
  json out = json::array();
  const std::size_t d = t.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (t(i, j, k) != 0) out.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"value", to_string(t(i, j, k))}});
  return out;
}

inline json algebra_json(const AlgebraSpec& a) {
  if (!a.name) return constants_json(a.tensor);
  json r = {{"name", *a.name}};
  if (a.param) r["param"] = to_string(*a.param);
  return r;
}

}  // namespace detail

inline json vector_json(const Vector& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) out.push_back(to_string(v[i]));
  return out;
}

inline json matrix_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    out.push_back(row);
  }
  return out;
}

inline BialgebraDocument document_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("document must be a JSON object");
  for (const char* key : {"dim", "g", "gstar", "alpha", "beta"})
    if (!j.contains(key)) detail::field_error(key, "missing");
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1)
    detail::field_error("dim", "expected a positive integer");
  BialgebraDocument d;
  d.dim = j["dim"].get<std::size_t>();
  d.g = detail::algebra_field(j["g"], "g", d.dim);
  d.gstar = detail::algebra_field(j["gstar"], "gstar", d.dim);
  d.alpha = detail::vector_field(j["alpha"], "alpha", d.dim);
  d.beta = detail::vector_field(j["beta"], "beta", d.dim);
  return d;
}

inline BialgebraDocument parse_document(const std::string& text) { return document_from_json(detail::parse_json(text)); }

inline BialgebraDocument load_document(const std::string& path) {
  try {
    return parse_document(detail::read_file(path));
  } catch (const parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

inline json document_json(const BialgebraDocument& d) {
  return {{"dim", d.dim},
          {"g", detail::algebra_json(d.g)},
          {"gstar", detail::algebra_json(d.gstar)},
          {"alpha", vector_json(d.alpha)},
          {"beta", vector_json(d.beta)}};
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string serialize(const BialgebraDocument& d) { return document_json(d).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Reports

inline json report_json(const VerificationReport& r) {
  json conds = json::array();
  for (const auto& c : r.conditions)
    conds.push_back({{"name", c.name}, {"pass", c.pass()}, {"nonzero", c.nonzero}, {"max_abs", to_string(c.residual)}});
  return {{"pass", r.pass()}, {"conditions", conds}};
}

inline std::string report_text(const VerificationReport& r) {
  std::ostringstream os;
  for (const auto& c : r.conditions)
    os << (c.pass() ? "  ok    " : "  FAIL  ") << c.name << "  (nonzero entries: " << c.nonzero
       << ", max |residual| = " << to_string(c.residual) << ")\n";
  os << (r.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

inline json verdict_json(const EquivalenceVerdict& v) {
  json r = {{"status", v.equivalent() ? "equivalent" : "unknown"}, {"searched", v.searched}, {"points", v.points}};
  r["witness"] = v.witness ? matrix_json(*v.witness) : json(nullptr);
  return r;
}

// ---------------------------------------------------------------------------
// Table files
//
// {"table": 6, "rows": [{
//    "id": "6.8", "g": {"name": "III"}, "gstar_name": "V.i",
//    "gstar": [{"i": 1, "j": 2, "k": 1, "value": "1"}, ...],
//    "alpha": ["0", "-1", "-1"], "beta": ["-2", "0", "0"],
//    "params": [{"name": "alpha", "kind": "scalar", "samples": ["1", "-1", "2"]}],
//    "constraints": ["alpha != 0"]}]}
//
// Values are expressions in the row parameters; a catalog parameter may be an
// expression too ({"name": "VI_a", "param": "a"}).

inline TableParam::Kind param_kind(const std::string& s, const std::string& field) {
  if (s == "algebra") return TableParam::Kind::Algebra;
  if (s == "scalar") return TableParam::Kind::Scalar;
  if (s == "discrete") return TableParam::Kind::Discrete;
  detail::field_error(field, "kind must be algebra, scalar, or discrete");
}

inline std::vector<TableRow> parse_table(const std::string& text) {
  const json j = detail::parse_json(text);
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array()) detail::field_error("rows", "expected a list");
  const int table = j.contains("table") && j["table"].is_number_integer() ? j["table"].get<int>() : 0;
  auto str = [](const json& v, const std::string& field) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    detail::field_error(field, "expected a string");
  };
  auto check_expr = [](const std::string& e, const std::string& field) {
    try {
      (void)Expr::parse(e);
    } catch (const error& ex) {
      detail::field_error(field, ex.what());
    }
  };
  std::vector<TableRow> rows;
  for (std::size_t n = 0; n < j["rows"].size(); ++n) {
    const json& r = j["rows"][n];
    const std::string f = "rows[" + std::to_string(n) + "]";
    for (const char* key : {"id", "g", "gstar_name", "gstar", "alpha", "beta"})
      if (!r.contains(key)) detail::field_error(f + "." + key, "missing");
    TableRow row;
    row.table = table;
    row.id = str(r["id"], f + ".id");
    if (!r["g"].is_object() || !r["g"].contains("name")) detail::field_error(f + ".g", "expected {name, param?}");
    try {
      row.g = canonical_name(str(r["g"]["name"], f + ".g.name"));
    } catch (const unknown_algebra& e) {
      detail::field_error(f + ".g.name", e.what());
    }
    if (r["g"].contains("param")) {
      row.g_param = str(r["g"]["param"], f + ".g.param");
      check_expr(row.g_param, f + ".g.param");
    }
    const std::size_t d = catalog_entry(row.g).dim;
    row.gstar_name = str(r["gstar_name"], f + ".gstar_name");
    if (!r["gstar"].is_array()) detail::field_error(f + ".gstar", "expected a list of constants");
    for (std::size_t c = 0; c < r["gstar"].size(); ++c) {
      const std::string fc = f + ".gstar[" + std::to_string(c) + "]";
      const json& e = r["gstar"][c];
      for (const char* key : {"i", "j", "k", "value"})
        if (!e.contains(key)) detail::field_error(fc + "." + key, "missing");
      TableRow::Constant k{detail::index_field(e["i"], fc + ".i", d), detail::index_field(e["j"], fc + ".j", d),
                           detail::index_field(e["k"], fc + ".k", d), str(e["value"], fc + ".value")};
      if (k.i >= k.j) detail::field_error(fc, "constants are listed with i < j");
      check_expr(k.value, fc + ".value");
      row.gstar.push_back(k);
    }
    for (const char* key : {"alpha", "beta"}) {
      const json& v = r[key];
      if (!v.is_array() || v.size() != d) detail::field_error(f + "." + key, "expected " + std::to_string(d) + " entries");
      auto& dst = std::string(key) == "alpha" ? row.alpha : row.beta;
      for (std::size_t i = 0; i < d; ++i) {
        dst.push_back(str(v[i], f + "." + key + "[" + std::to_string(i) + "]"));
        check_expr(dst.back(), f + "." + key + "[" + std::to_string(i) + "]");
      }
    }
    if (r.contains("params")) {
      for (std::size_t p = 0; p < r["params"].size(); ++p) {
        const json& pj = r["params"][p];
        const std::string fp = f + ".params[" + std::to_string(p) + "]";
        TableParam tp;
        tp.name = str(pj.value("name", json()), fp + ".name");
        tp.kind = param_kind(pj.value("kind", std::string("scalar")), fp + ".kind");
        if (!pj.contains("samples") || !pj["samples"].is_array() || pj["samples"].empty())
          detail::field_error(fp + ".samples", "expected a nonempty list");
        for (std::size_t s = 0; s < pj["samples"].size(); ++s)
          tp.samples.push_back(detail::scalar_field(pj["samples"][s], fp + ".samples[" + std::to_string(s) + "]"));
        row.params.push_back(tp);
      }
    }
    if (r.contains("constraints"))
      for (std::size_t c = 0; c < r["constraints"].size(); ++c) {
        const std::string fc = f + ".constraints[" + std::to_string(c) + "]";
        row.constraints.push_back(str(r["constraints"][c], fc));
        try {
          (void)Predicate::parse(row.constraints.back());
        } catch (const error& e) {
          detail::field_error(fc, e.what());
        }
      }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<TableRow> load_table(const std::string& path) {
  try {
    return parse_table(detail::read_file(path));
  } catch (const parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

inline std::string default_data_dir() {
#ifdef JLB_DATA_DIR
  return JLB_DATA_DIR;
#else
  return "data";
#endif
}

inline std::string table_path(int table, const std::string& data_dir = default_data_dir()) {
  return data_dir + "/tables/table" + std::to_string(table) + ".json";
}

}  // namespace jlb
