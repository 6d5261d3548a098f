#include "jlb/adjoint.hpp"
#include "jlb/expr.hpp"

#include <gtest/gtest.h>

using namespace jlb;

TEST(Rational, ParseAndPrintLowestTerms) {
  EXPECT_EQ(parse_scalar("6/4"), Scalar(3, 2));
  EXPECT_EQ(to_string(parse_scalar("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_scalar("-10/5")), "-2");
  EXPECT_EQ(to_string(Scalar(0)), "0");
  EXPECT_EQ(parse_scalar(" -7 "), Scalar(-7));
  EXPECT_THROW(parse_scalar("1/0"), parse_error);
  EXPECT_EQ(parse_scalar("-1.25"), Scalar(-5, 4));
  EXPECT_THROW(parse_scalar("1e3"), parse_error);
  EXPECT_THROW(parse_scalar(""), parse_error);
}

TEST(Rational, ExactSqrt) {
  EXPECT_EQ(exact_sqrt(Scalar(9, 4)), Scalar(3, 2));
  EXPECT_FALSE(exact_sqrt(Scalar(2)).has_value());
  EXPECT_FALSE(exact_sqrt(Scalar(-1)).has_value());
}

TEST(Matrix, InverseAndDeterminant) {
  const Matrix a{{2, 1, 0}, {0, 1, 3}, {1, 0, 1}};
  EXPECT_EQ(determinant(a), Scalar(5));
  EXPECT_EQ(a * inverse(a), Matrix::identity(3));
  EXPECT_THROW(inverse(Matrix{{1, 2}, {2, 4}}), singular_matrix);
  EXPECT_EQ(rank(Matrix{{1, 2}, {2, 4}}), 1u);
}

TEST(Matrix, SolveLinearAffine) {
  // x + y = 2 has the line (2 - t, t)
  const auto s = solve_linear(Matrix{{1, 1}}, Vector{2});
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->basis.size(), 1u);
  const Vector p = s->at({Scalar(5)});
  EXPECT_EQ(p[0] + p[1], Scalar(2));
  EXPECT_FALSE(solve_linear(Matrix{{1, 1}, {1, 1}}, Vector{0, 1}).has_value());
}

TEST(StructureTensor, AntisymmetricCompletion) {
  const auto t = StructureTensor::from_upper(3, {{0, 1, 2, Scalar(1)}});
  EXPECT_EQ(t(0, 1, 2), Scalar(1));
  EXPECT_EQ(t(1, 0, 2), Scalar(-1));
  EXPECT_EQ(t(0, 0, 2), Scalar(0));
  EXPECT_THROW(StructureTensor(3).set(1, 1, 0, Scalar(1)), error);
}

TEST(StructureTensor, Antisymmetrized) {
  std::vector<Scalar> raw(8, 0);
  raw[(0 * 2 + 1) * 2 + 0] = 4;  // f_12^1 = 4, f_21^1 = 0 -> 2 and -2
  const auto t = StructureTensor::antisymmetrized(2, raw);
  EXPECT_EQ(t(0, 1, 0), Scalar(2));
  EXPECT_EQ(t(1, 0, 0), Scalar(-2));
}

TEST(Adjoint, MinusSignConvention) {
  // (X_i)_j^k = -f_ij^k and (Y^k)_ij = -f_ij^k
  const auto t = StructureTensor::from_upper(2, {{0, 1, 1, Scalar(1)}});
  const auto xs = adjoint_x(t);
  const auto ys = adjoint_y(t);
  EXPECT_EQ(xs[0](1, 1), Scalar(-1));
  EXPECT_EQ(xs[1](0, 1), Scalar(1));
  EXPECT_EQ(ys[1](0, 1), Scalar(-1));
  EXPECT_EQ(ys[1](1, 0), Scalar(1));
}

TEST(Adjoint, JacobiIndexAndMatrixFormsAgree) {
  // so(3) satisfies Jacobi; a deformed tensor does not
  auto so3 = StructureTensor::from_upper(3, {{0, 1, 2, Scalar(1)}, {1, 2, 0, Scalar(1)}, {0, 2, 1, Scalar(-1)}});
  EXPECT_TRUE(is_lie_algebra(so3));
  auto bad = StructureTensor::from_upper(3, {{0, 1, 2, Scalar(1)}, {0, 2, 0, Scalar(1)}, {1, 2, 1, Scalar(1)}});
  EXPECT_FALSE(jacobi_residual(bad).is_zero());
  EXPECT_EQ(jacobi_residual_matrix(bad).is_zero(), jacobi_residual(bad).is_zero());
  EXPECT_FALSE(is_lie_algebra(bad));
}

TEST(Expr, EvaluatesExactly) {
  const Env env{{"a", Scalar(2)}, {"b", Scalar(1, 2)}};
  EXPECT_EQ(Expr::parse("(a+1)/(a-1)").eval(env), Scalar(3));
  EXPECT_EQ(Expr::parse("-2*(a*b+1)/((a+1)*(b-1))").eval(env), Scalar(8, 3));
  EXPECT_EQ(Expr::parse("a^3 - -b").eval(env), Scalar(17, 2));
  EXPECT_THROW(Expr::parse("1/(a-2)").eval(env), error);
  EXPECT_THROW(Expr::parse("c").eval(env), unknown_parameter);
  EXPECT_THROW(Expr::parse("(a"), parse_error);
}

TEST(Expr, Predicates) {
  const Env env{{"a", Scalar(3)}};
  EXPECT_TRUE(Predicate::parse("a != 1").holds(env));
  EXPECT_FALSE(Predicate::parse("a < 0").holds(env));
  EXPECT_EQ(first_violation({Predicate::parse("a > 0"), Predicate::parse("a != 3")}, env), "a != 3");
  // a division by zero inside a constraint counts as a violation
  EXPECT_FALSE(first_violation({Predicate::parse("1/(a-3) > 0")}, env).empty());
}
