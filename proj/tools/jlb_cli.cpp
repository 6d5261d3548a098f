#include "jlb/io.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace jlb;

namespace {

std::string bracket_text(const StructureTensor& t) {
  std::string out;
  const std::size_t d = t.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      std::vector<std::string> coeffs;
      bool any = false;
      for (std::size_t k = 0; k < d; ++k) {
        coeffs.push_back(to_string(t(i, j, k)));
        any = any || t(i, j, k) != 0;
      }
      if (!any) continue;
      out += (out.empty() ? "" : ", ") + std::string("[X_") + std::to_string(i + 1) + ", X_" + std::to_string(j + 1) +
             "] = " + detail::linear_combination(coeffs, "X", false);
    }
  return out.empty() ? "abelian" : out;
}

int cmd_catalog(std::optional<std::size_t> dim) {
  for (const auto& name : catalog_names(dim)) {
    const auto& e = catalog_entry(name);
    std::cout << name << "  (dim " << e.dim << ")";
    if (e.parametrized) {
      std::cout << "  parameter a:";
      for (const auto& c : e.constraints) std::cout << " " << c;
    }
    std::cout << "\n";
    const LieAlgebra sample = lookup(name, e.parametrized ? std::optional<Scalar>(Scalar(2)) : std::nullopt);
    std::cout << "  brackets" << (e.parametrized ? " (a = 2)" : "") << ": " << bracket_text(sample.tensor) << "\n";
    const auto fam = automorphism_family(name);
    std::cout << "  automorphisms: " << fam.group;
    if (fam.kind == AutomorphismFamily::Kind::Predicate) {
      std::cout << " (membership by the automorphism predicate)\n";
      continue;
    }
    std::cout << "\n";
    for (const auto& br : fam.branches) {
      std::cout << "    " << br.name << ": [";
      for (std::size_t i = 0; i < br.entries.size(); ++i) {
        std::cout << (i ? "; " : "");
        for (std::size_t j = 0; j < br.entries[i].size(); ++j) std::cout << (j ? ", " : "") << br.entries[i][j];
      }
      std::cout << "]";
      for (const auto& c : br.constraints) std::cout << "  " << c;
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_verify(const std::string& path, bool as_json) {
  const auto doc = load_document(path);
  const auto report = verify(doc.bialgebra());
  if (as_json)
    std::cout << report_json(report).dump(2) << "\n";
  else
    std::cout << path << "\n" << report_text(report);
  return report.pass() ? 0 : 1;
}

int cmd_equiv(const std::string& p1, const std::string& p2, int grid, std::size_t budget, bool as_json) {
  const auto d1 = load_document(p1), d2 = load_document(p2);
  SearchRegion region{rational_grid(grid, 2), budget};
  const auto v = search_witness(d1.bialgebra(), d2.bialgebra(), region);
  if (as_json) {
    std::cout << verdict_json(v).dump(2) << "\n";
  } else {
    std::cout << (v.equivalent() ? "equivalent" : "unknown (no witness found)") << "\n";
    std::cout << "searched: " << v.searched << ", " << v.points << " points\n";
    if (v.witness) std::cout << "witness A = " << *v.witness << "\n";
  }
  return v.equivalent() ? 0 : 1;
}

int cmd_identify(const std::string& path, bool as_json) {
  const auto doc = load_document(path);
  const auto gcls = classify_algebra(doc.g.tensor);
  const auto id = identify_dual(doc.gstar.tensor);
  if (as_json) {
    json r = {{"g", gcls.name}, {"gstar", id.algebra.name}, {"c", matrix_json(id.c)}};
    if (id.algebra.param) r["gstar_param"] = to_string(*id.algebra.param);
    std::cout << r.dump(2) << "\n";
  } else {
    std::cout << "g:  " << lookup(gcls.name, gcls.param).label() << "\n";
    std::cout << "g*: " << id.algebra.label() << "\n";
    std::cout << "C = " << id.c << "  (new basis = C * old basis)\n";
  }
  return 0;
}

int classify_2d(const LieAlgebra& g) {
  const auto res = classify_d2(g);
  std::cout << "g = " << g.label() << ": " << res.strata.size() << " feasible strata, " << res.rows.size()
            << " rows after reduction\n";
  for (const auto& row : res.rows) {
    std::cout << "  " << row.g << " / " << row.gstar << ":  " << row.gstar_relations << ";  X0 = " << row.x0
              << ";  phi0 = " << row.phi0;
    if (!row.constraints.empty()) {
      std::cout << ";  ";
      for (std::size_t i = 0; i < row.constraints.size(); ++i) std::cout << (i ? ", " : "") << row.constraints[i];
    }
    std::cout << "\n";
  }
  return 0;
}

int classify_3d(const LieAlgebra& g, const std::string& data_dir) {
  std::size_t confirmed = 0, total = 0;
  for (int t : {6, 7}) {
    for (const auto& row : load_table(table_path(t, data_dir))) {
      if (row.g != g.name) continue;
      std::optional<Bialgebra> sample;
      Env used;
      for (const auto& env : row.sample_envs()) {
        try {
          const auto b = row.instantiate(env);
          if (b.g == g.tensor) {
            sample = b;
            used = env;
            break;
          }
        } catch (const error&) {
        }
      }
      if (!sample) continue;
      ++total;
      const auto support = support_of(*sample);
      const auto fams = solve_guided(g, support);
      const auto u = unknowns_of(*sample);
      std::optional<std::size_t> hit;
      for (std::size_t k = 0; k < fams.size() && !hit; ++k)
        if (fams[k].contains(u)) hit = k;
      std::cout << "  row " << row.id << " (" << row.gstar_name << ", " << env_string(used) << "): ";
      if (hit) {
        ++confirmed;
        std::cout << "confirmed by a " << fams[*hit].free_vars().size() << "-parameter stratum (" << fams.size()
                  << " strata on " << support.size() << " unknowns)\n";
      } else {
        std::cout << "not covered by the guided solution\n";
      }
    }
  }
  std::cout << confirmed << "/" << total << " rows confirmed\n";
  return confirmed == total ? 0 : 1;
}

int cmd_verify_tables(std::optional<int> table, std::optional<std::size_t> samples, const std::string& data_dir,
                      bool as_json) {
  std::vector<int> tables = table ? std::vector<int>{*table} : std::vector<int>{4, 5, 6, 7};
  bool all = true;
  json out = json::array();
  for (int t : tables) {
    const auto rows = load_table(table_path(t, data_dir));
    const auto rep = verify_tables(rows, samples);
    all = all && rep.pass();
    if (as_json) {
      json jr = json::array();
      for (const auto& r : rep.rows) jr.push_back({{"id", r.id}, {"pass", r.pass()}, {"samples", r.checked()}});
      out.push_back({{"table", t}, {"rows", jr}, {"passed", rep.passed()}, {"total", rep.rows.size()}});
      continue;
    }
    std::cout << "Table " << t << "\n";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
      const auto& r = rep.rows[i];
      std::cout << "  " << (r.pass() ? "ok    " : "FAIL  ") << r.id << "  " << rows[i].g << " / " << rows[i].gstar_name
                << "  (" << r.checked() << " samples";
      const auto skipped = r.samples.size() - r.checked();
      if (skipped) std::cout << ", " << skipped << " skipped";
      std::cout << ")\n";
      for (const auto& s : r.samples)
        if (!s.skipped && !s.report->pass()) {
          std::cout << "        at " << env_string(s.env) << ":";
          for (const auto& f : s.report->failures()) std::cout << " " << f;
          std::cout << "\n";
        }
    }
    std::cout << rep.passed() << "/" << rep.rows.size() << " rows pass\n";
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification, equivalence and classification of real Jacobi-Lie bialgebras"};
  app.require_subcommand(1);

  std::optional<std::size_t> dim;
  auto* catalog = app.add_subcommand("catalog", "List catalog Lie algebras and their automorphism groups");
  catalog->add_option("--dim", dim, "Only algebras of this dimension")->check(CLI::IsMember({2, 3}));

  std::string doc1, doc2;
  bool as_json = false;
  auto* ver = app.add_subcommand("verify", "Check the seven bialgebra conditions for a document");
  ver->add_option("doc", doc1, "Bialgebra document (JSON)")->required();
  ver->add_flag("--json", as_json, "Machine-readable report");

  int grid = 3;
  std::size_t budget = 200000;
  auto* eq = app.add_subcommand("equiv", "Search for an automorphism relating two bialgebras");
  eq->add_option("doc1", doc1)->required();
  eq->add_option("doc2", doc2)->required();
  eq->add_option("--grid", grid, "Grid of rationals p/q with |p| <= N, q <= 2")->check(CLI::Range(1, 12));
  eq->add_option("--budget", budget, "Maximum number of grid points");
  eq->add_flag("--json", as_json, "Machine-readable verdict");

  auto* ident = app.add_subcommand("identify", "Identify the dual algebra with a catalog entry");
  ident->add_option("doc", doc1)->required();
  ident->add_flag("--json", as_json, "Machine-readable identification");

  std::size_t cdim = 2;
  std::string algebra;
  std::optional<std::string> param;
  std::string data_dir = default_data_dir();
  auto* cls = app.add_subcommand("classify", "Classify bialgebra structures over a catalog algebra");
  cls->add_option("--dim", cdim)->check(CLI::IsMember({2, 3}));
  cls->add_option("--algebra", algebra, "Catalog name of g")->required();
  cls->add_option("--param", param, "Parameter a for VI_a / VII_a");
  cls->add_option("--data-dir", data_dir);

  std::optional<int> table;
  std::optional<std::size_t> samples;
  auto* vt = app.add_subcommand("verify-tables", "Verify the shipped classification tables");
  vt->add_option("--table", table)->check(CLI::IsMember({4, 5, 6, 7}));
  vt->add_option("--samples", samples, "Use the first k samples of each parameter")->check(CLI::PositiveNumber);
  vt->add_option("--data-dir", data_dir);
  vt->add_flag("--json", as_json, "Machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*catalog) return cmd_catalog(dim);
    if (*ver) return cmd_verify(doc1, as_json);
    if (*eq) return cmd_equiv(doc1, doc2, grid, budget, as_json);
    if (*ident) return cmd_identify(doc1, as_json);
    if (*cls) {
      const LieAlgebra g = lookup(algebra, param ? std::optional<Scalar>(parse_scalar(*param)) : std::nullopt);
      if (g.dim != cdim) throw parameter_error(g.name + " is not " + std::to_string(cdim) + "-dimensional");
      return cdim == 2 ? classify_2d(g) : classify_3d(g, data_dir);
    }
    if (*vt) return cmd_verify_tables(table, samples, data_dir, as_json);
  } catch (const no_match& e) {
    std::cerr << "no match: " << e.what() << "\n";
    return 1;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
