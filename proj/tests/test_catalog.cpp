#include "jlb/catalog.hpp"

#include <gtest/gtest.h>

using namespace jlb;

TEST(Catalog, AllEntriesAreLieAlgebras) {
  for (const auto& name : catalog_names()) {
    const auto& e = catalog_entry(name);
    for (const Scalar a : {Scalar(1, 2), Scalar(2), Scalar(3)}) {
      const auto g = lookup(name, e.parametrized ? std::optional<Scalar>(a) : std::nullopt);
      EXPECT_TRUE(is_lie_algebra(g.tensor)) << g.label();
      EXPECT_EQ(g.tensor.dim(), e.dim);
    }
  }
  EXPECT_EQ(catalog_names(2).size(), 2u);
  EXPECT_EQ(catalog_names(3).size(), 11u);
}

TEST(Catalog, BracketsInStandardBasis) {
  // [X_1, X_2] = X_1 for A2; [X_2, X_3] = X_1 for II; [X_1, X_2] = -(X_2 + X_3) for III
  EXPECT_EQ(lookup("A2").tensor(0, 1, 0), Scalar(1));
  EXPECT_EQ(lookup("II").tensor(1, 2, 0), Scalar(1));
  const auto iii = lookup("III").tensor;
  EXPECT_EQ(iii(0, 1, 1), Scalar(-1));
  EXPECT_EQ(iii(0, 1, 2), Scalar(-1));
  EXPECT_EQ(iii(0, 2, 1), Scalar(-1));
  EXPECT_EQ(iii(0, 2, 2), Scalar(-1));
  EXPECT_EQ(lookup("VI_a", Scalar(3)).tensor(0, 1, 1), Scalar(-3));
}

TEST(Catalog, NamesAndParameters) {
  EXPECT_EQ(canonical_name("VI0"), "VI_0");
  EXPECT_EQ(canonical_name("vii_a"), "VII_a");
  EXPECT_THROW(lookup("X"), unknown_algebra);
  EXPECT_THROW(lookup("VI_a"), parameter_error);
  EXPECT_THROW(lookup("VI_a", Scalar(1)), constraint_violation);
  EXPECT_THROW(lookup("VII_a", Scalar(-1)), constraint_violation);
  EXPECT_THROW(lookup("III", Scalar(2)), parameter_error);
}

TEST(Automorphisms, TemplatesPreserveBrackets) {
  const Env env{{"a", Scalar(2)}, {"b", Scalar(-1)}, {"c", Scalar(3)}, {"d", Scalar(1, 2)},
                {"e", Scalar(1)}, {"f", Scalar(-2)}};
  for (const auto& name : catalog_names()) {
    const auto fam = automorphism_family(name);
    if (fam.kind == AutomorphismFamily::Kind::Predicate) continue;
    const auto& e = catalog_entry(name);
    const auto g = lookup(name, e.parametrized ? std::optional<Scalar>(Scalar(2)) : std::nullopt);
    for (const auto& br : fam.branches) {
      Env full = env;
      for (const auto& p : br.params)
        if (!full.count(p)) full[p] = Scalar(static_cast<int>(full.size()) % 5 + 1);
      EXPECT_TRUE(is_automorphism(g, instantiate(br, full))) << name << " " << br.name;
    }
  }
}

TEST(Automorphisms, ConstraintViolationsAreRejected) {
  const auto fam = automorphism_family("III");
  const auto& br = find_branch(fam, "");
  EXPECT_THROW(instantiate(br, {{"a", 1}, {"b", 1}, {"c", 2}, {"d", 2}}), constraint_violation);
  EXPECT_FALSE(admissible(br, {{"a", 1}, {"b", 1}, {"c", 2}, {"d", -2}}));
  EXPECT_THROW(instantiate(br, {{"a", 1}}), parameter_error);
  EXPECT_THROW(automorphism_sample("VIII", "", {}), parameter_error);
}

TEST(Automorphisms, PredicateFamiliesViaCayley) {
  for (const char* name : {"VIII", "IX"}) {
    const auto g = lookup(name);
    const Matrix a = cayley_inner_automorphism(g.tensor, Vector{1, 2, -1});
    EXPECT_TRUE(is_automorphism(g, a)) << name;
    EXPECT_FALSE(is_automorphism(g, Matrix{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}})) << name;
  }
  // IX automorphisms are orthogonal
  const Matrix a = cayley_inner_automorphism(lookup("IX").tensor, Vector{1, 2, 3});
  EXPECT_EQ(a * a.transpose(), Matrix::identity(3));
}

TEST(Automorphisms, SingularMatrixIsAnError) {
  EXPECT_THROW(is_automorphism(lookup("A1"), Matrix{{1, 1}, {1, 1}}), singular_matrix);
}
