#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace nra;

namespace {

Polynomial X(std::uint32_t i) { return Polynomial::var(Var(i)); }

const Var x1(1), x2(2), x3(3);

}  // namespace

TEST(Polynomial, ArithmeticAndOrder) {
  Polynomial x = X(1), y = X(2);
  Polynomial f = (x + y) * (x - y);
  EXPECT_EQ(f, x * x - y * y);
  EXPECT_EQ(f.level(), 2u);
  EXPECT_EQ(f.total_degree(), 2u);
  EXPECT_EQ(f.degree(x1), 2u);
  EXPECT_TRUE((f - f).is_zero());
  EXPECT_EQ((x + 1).pow(3), x * x * x + x * x * 3 + x * 3 + 1);
  EXPECT_EQ(f.to_string(), "-x2^2 + x1^2");
}

TEST(Polynomial, EvaluateSpecializeSubstitute) {
  Polynomial f = X(1) * X(1) + X(2) * X(2) - X(3) * X(3);
  Assignment a;
  a.set(x1, 3);
  a.set(x2, 4);
  a.set(x3, 5);
  EXPECT_EQ(f.evaluate(a), 0);
  Assignment partial;
  partial.set(x1, Rational(1, 2));
  EXPECT_EQ(f.specialize(partial), X(2) * X(2) - X(3) * X(3) + Rational(1, 4));
  EXPECT_EQ(f.substitute({{1, X(2)}}), X(2) * X(2) * 2 - X(3) * X(3));
  Assignment missing;
  missing.set(x1, 1);
  EXPECT_THROW(f.evaluate(missing), UnassignedVariable);
}

TEST(Polynomial, DerivativeAndCoefficients) {
  Polynomial f = X(1) * X(1) * X(2) + X(1) * 3 + 7;
  EXPECT_EQ(f.derivative(x1), X(1) * X(2) * 2 + 3);
  auto cs = f.coefficients(x1);
  ASSERT_EQ(cs.size(), 3u);
  EXPECT_EQ(cs[0], Polynomial(7));
  EXPECT_EQ(cs[1], Polynomial(3));
  EXPECT_EQ(cs[2], X(2));
}

TEST(Algebra, GcdAndExactDivision) {
  Polynomial x = X(1), y = X(2);
  Polynomial g = gcd((x - y) * (x + 1) * (y * y + 1), (x - y) * (y * y + 1) * (x + 2));
  EXPECT_EQ(g, primitive((x - y) * (y * y + 1)));
  EXPECT_EQ(divide_exact((x - y) * (x + y), x + y), x - y);
  EXPECT_THROW(divide_exact(x * x + 1, x + 1), AlgebraError);
}

TEST(Algebra, QuadraticDiscriminantIsBSquaredMinus4AC) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> c(-20, 20);
  for (int i = 0; i < 100; ++i) {
    long a = c(rng), b = c(rng), cc = c(rng);
    if (a == 0) a = 1;
    Polynomial f = X(1) * X(1) * a + X(1) * b + cc;
    EXPECT_EQ(discriminant(f, x1), Polynomial(b * b - 4 * a * cc));
  }
  // Symbolic coefficients: a = x2, b = x3, c = 1.
  Polynomial f = X(2) * X(1) * X(1) + X(3) * X(1) + 1;
  EXPECT_EQ(discriminant(f, x1), X(3) * X(3) - X(2) * 4);
}

TEST(Algebra, ResultantMatchesSylvesterDeterminant) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto f = oracle::random_dense(rng, 6, 9), g = oracle::random_dense(rng, 6, 9);
    Polynomial r = resultant(oracle::from_dense(f, x1), oracle::from_dense(g, x1), x1);
    ASSERT_TRUE(r.is_constant());
    EXPECT_EQ(r.constant_value(), oracle::sylvester_resultant(f, g)) << i;
  }
}

TEST(Algebra, MultivariateResultantSpecializesToSylvester) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 60; ++i) {
    Polynomial f = oracle::random_polynomial(rng, 3, 3, 4, 5);
    Polynomial g = oracle::random_polynomial(rng, 3, 3, 4, 5);
    if (f.degree(x3) == 0 || g.degree(x3) == 0) continue;
    Polynomial r = resultant(f, g, x3);
    EXPECT_FALSE(r.has_var(x3));
    for (int k = 0; k < 3; ++k) {
      Assignment a;
      a.set(x1, oracle::random_rational(rng, 3, 7));
      a.set(x2, oracle::random_rational(rng, 3, 7));
      Polynomial fs = f.specialize(a), gs = g.specialize(a);
      // Leading coefficients must survive the specialization.
      if (fs.degree(x3) != f.degree(x3) || gs.degree(x3) != g.degree(x3)) continue;
      EXPECT_EQ(r.evaluate(a), oracle::sylvester_resultant(oracle::dense(fs, x3), oracle::dense(gs, x3)));
    }
  }
}

TEST(Algebra, SquareFreeBasisProperties) {
  Polynomial x = X(1), y = X(2);
  auto basis = square_free_basis({(x - 1) * (x - 1) * (x + 2), (x + 2) * (x - y)});
  for (std::size_t i = 0; i < basis.size(); ++i) {
    EXPECT_TRUE(square_free_part(basis[i]) == basis[i]);
    for (std::size_t j = i + 1; j < basis.size(); ++j) EXPECT_TRUE(gcd(basis[i], basis[j]).is_constant());
  }
  auto has = [&](const Polynomial& p) { return std::find(basis.begin(), basis.end(), p) != basis.end(); };
  EXPECT_TRUE(has(x - 1));
  EXPECT_TRUE(has(x + 2));
  EXPECT_TRUE(has(primitive(x - y)));
}

TEST(RealRoots, IsolationAgreesWithSturm) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    auto d = oracle::random_dense(rng, 8, 12);
    Polynomial p = oracle::from_dense(d, x1);
    if (p.is_constant()) continue;
    auto roots = isolate_roots(p);
    ASSERT_EQ(static_cast<int>(roots.size()), oracle::sturm_count(d)) << p.to_string();
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (roots[k].is_exact()) {
        EXPECT_EQ(oracle::horner(d, roots[k].value()), 0);
      } else {
        EXPECT_EQ(oracle::sturm_count(d, roots[k].lo(), roots[k].hi()), 1);
      }
      if (k + 1 < roots.size()) EXPECT_LT(compare(roots[k], roots[k + 1]), 0);
    }
  }
}

TEST(RealRoots, ExactRationalRootsAndComparison) {
  Polynomial x = X(1);
  auto r = isolate_roots((x * 2 - 1) * (x * x - 2));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_TRUE(r[1].is_exact());
  EXPECT_EQ(r[1].value(), Rational(1, 2));
  EXPECT_EQ(r[2].compare(Rational(141, 100)), 1);
  EXPECT_EQ(r[2].compare(Rational(142, 100)), -1);
  auto s = isolate_roots(x * x * x * x - x * x * 4 + 4);  // (x^2 - 2)^2
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(compare(s[1], r[2]), 0);
}

TEST(RealRoots, TruncationOfLongRationals) {
  using Pair = std::pair<Integer, Integer>;
  EXPECT_EQ(truncate_fraction(1234, 12345, 4), Pair(12, 123));
  EXPECT_EQ(truncate_fraction(12345, 1234, 4), Pair(123, 12));
  EXPECT_EQ(truncate_rational(make_rational(1234, 12345), 4), make_rational(12, 123));
  EXPECT_EQ(truncate_rational(make_rational(-12345, 1234), 4), make_rational(-123, 12));
  EXPECT_EQ(truncate_rational(make_rational(7, 3), 4), make_rational(7, 3));
}

TEST(RealRoots, PickRationalPrefersSmallIntegers) {
  EXPECT_EQ(*pick_rational(IntervalSet::all()), 0);
  EXPECT_EQ(*pick_rational(IntervalSet::open(Rational(-5, 2), Rational(7))), 0);
  EXPECT_EQ(*pick_rational(IntervalSet::open(Rational(3, 2), Rational(9, 2))), 2);
  Rational q = *pick_rational(IntervalSet::open(Rational(1, 3), Rational(1, 2)));
  EXPECT_GT(q, Rational(1, 3));
  EXPECT_LT(q, Rational(1, 2));
  EXPECT_EQ(*pick_rational(IntervalSet::open(0, 10), Rational(7)), 7);
  EXPECT_FALSE(pick_rational(IntervalSet()).has_value());
}

TEST(RealRoots, SignConditionsMatchPointwiseEvaluation) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    std::vector<SignCondition> cs;
    for (int k = 0; k < 2; ++k) {
      Polynomial p = oracle::from_dense(oracle::random_dense(rng, 4, 6), x1);
      if (p.is_constant()) p = X(1);
      cs.push_back({p, k ? Rel::GT : Rel::LT});
    }
    IntervalSet S = solve_sign_conditions(cs);
    for (int t = 0; t < 50; ++t) {
      Rational q = oracle::random_rational(rng, 6, 97);
      bool all = true;
      for (auto& c : cs) all = all && rel_holds(c.rel, sign(oracle::horner(oracle::dense(c.poly, x1), q)));
      EXPECT_EQ(S.contains(q), all);
    }
  }
}
