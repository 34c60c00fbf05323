#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "frog/errors.hpp"
#include "frog/genfun.hpp"
#include "frog/params.hpp"
#include "frog/u_dist.hpp"

using frog::ExpPoly;
using frog::ExpRational;
using frog::Interval;
using frog::Rational;

namespace {

ExpPoly g_of(int d, long a, long b) { return frog::build_g(frog::derive_params(d, Rational(a, b))); }

}  // namespace

TEST(ExpRational, ArithmeticMergesExponents) {
  const ExpRational a(Rational(2), Rational(1, 3));
  const ExpRational b(Rational(-2), Rational(1, 3));
  EXPECT_TRUE((a + b).is_zero());
  const ExpRational prod = ExpRational(Rational(3), Rational(1, 2)) * ExpRational(Rational(1, 3), Rational(-1, 4));
  EXPECT_EQ(prod, ExpRational(Rational(1), Rational(1, 4)));
  const Interval e = prod.enclose(128);
  EXPECT_NEAR(e.mid_double(), std::exp(0.25), 1e-15);
  EXPECT_LT(e.width_double(), 1e-35);
  EXPECT_NEAR(prod.to_double(), std::exp(0.25), 1e-15);
}

TEST(ExpPoly, RejectsNegativeExponents) {
  ExpPoly g;
  EXPECT_THROW(g.add(-1, ExpRational(Rational(1))), frog::NegativeExponent);
}

TEST(BuildG, HandAssembledQuadratic) {
  const ExpPoly g = g_of(2, 2, 5);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g.coefficient(0), ExpRational(Rational(1), Rational(-3, 4)));
  EXPECT_EQ(g.coefficient(1), ExpRational(Rational(1), Rational(-1, 2)));
  EXPECT_EQ(g.coefficient(2), ExpRational(Rational(-1), Rational(-3, 4)));
  ASSERT_TRUE(g.provenance().has_value());
  EXPECT_EQ(g.provenance()->c, Rational(3));
}

TEST(BuildG, ValuesAtZeroAndOne) {
  for (auto [d, a, b] : {std::tuple{2, 55L, 159L}, std::tuple{3, 42L, 145L}, std::tuple{4, 40L, 153L},
                         std::tuple{5, 23L, 94L}, std::tuple{7, 23L, 102L}, std::tuple{9, 20L, 93L}}) {
    const auto params = frog::derive_params(d, Rational(a, b));
    const ExpPoly g = frog::build_g(params);
    const Rational dd(d);
    const ExpRational at0(Rational(1), -params.p_star / dd - (dd - Rational(1)) / dd);
    const ExpRational at1(Rational(1), -params.p_star);
    EXPECT_EQ(g.value_at_zero(), at0) << d;
    EXPECT_EQ(g.value_at_one(), at1) << d;
    const Interval e0 = g.evaluate(Interval::point(0.0, 128), 128);
    const Interval e1 = g.evaluate(Interval::point(1.0, 128), 128);
    const Interval r0 = at0.enclose(256), r1 = at1.enclose(256);
    EXPECT_TRUE(frog::intersect(e0, r0).has_value());
    EXPECT_TRUE(frog::intersect(e1, r1).has_value());
    EXPECT_LT(e1.width_double(), 1e-25);
  }
}

TEST(BuildG, DegreeMatchesRecount) {
  for (auto [d, a, b] : {std::tuple{2, 2L, 5L}, std::tuple{3, 42L, 145L}, std::tuple{4, 1L, 4L},
                         std::tuple{6, 46L, 197L}, std::tuple{8, 38L, 173L}}) {
    const ExpPoly g = g_of(d, a, b);
    int max_j = 0;
    const frog::BivarPoly top = frog::s_poly(d, d - 1);
    for (const auto& [e, c] : top.terms()) max_j = std::max(max_j, e.second);
    const long expect = (d - 1) * ((d + 1) * a - b) + (b - 2 * a) * max_j;
    EXPECT_EQ(g.degree(), expect) << d;
    EXPECT_EQ(g.min_exponent(), 0);
  }
}

TEST(GDerivative, Examples) {
  ExpPoly constant;
  constant.add(0, ExpRational(Rational(5), Rational(1, 2)));
  EXPECT_TRUE(frog::g_derivative(constant).is_zero());

  const ExpPoly dg = frog::g_derivative(g_of(2, 2, 5));
  ASSERT_EQ(dg.size(), 2u);
  EXPECT_EQ(dg.coefficient(0), ExpRational(Rational(1), Rational(-1, 2)));
  EXPECT_EQ(dg.coefficient(1), ExpRational(Rational(-2), Rational(-3, 4)));

  const double root = std::exp(0.25) / 2.0;
  EXPECT_GT(dg.evaluate(root - 1e-6), 0.0);
  EXPECT_LT(dg.evaluate(root + 1e-6), 0.0);
}

TEST(FValue, Examples) {
  const auto p2 = frog::derive_params(2, Rational(2, 5));
  EXPECT_NEAR(frog::f_value(p2, 0.0), std::exp(-0.5), 1e-14);
  const double y = 0.642;
  EXPECT_NEAR(frog::f_value(p2, -3.0 * std::log(y)), g_of(2, 2, 5).evaluate(y), 1e-10);

  const auto p3 = frog::derive_params(3, Rational(3, 10));
  const double v = frog::f_value(p3, 0.5);
  EXPECT_GT(v, 0.0);
  EXPECT_LT(v, 1.0);
  EXPECT_NEAR(v, frog::build_g(p3).evaluate(std::exp(-0.5 / 14.0)), 1e-10);
}

TEST(FValue, EnclosureAndLimit) {
  const auto params = frog::derive_params(2, Rational(2, 5));
  const frog::FEvaluator f(params);
  const Interval e = f.enclose(Rational(3, 2));
  EXPECT_LT(e.width_double(), 1e-25);
  EXPECT_NEAR(e.mid_double(), f(1.5), 1e-15);
  // lambda -> infinity corresponds to y -> 0
  EXPECT_NEAR(f.at_infinity(), std::exp(-0.75), 1e-14);
  EXPECT_NEAR(f(400.0), f.at_infinity(), 1e-12);
}

TEST(FValue, ChangeOfVariablesRandomized) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uy(0.001, 0.999);
  int checked = 0;
  while (checked < 100) {
    const int d = std::uniform_int_distribution<int>(2, 6)(rng);
    const long b = std::uniform_int_distribution<long>(5, 60)(rng);
    const long a = std::uniform_int_distribution<long>(1, b / 2)(rng);
    const Rational p(a, b);
    if (!frog::drift_in_range(d, p)) continue;
    const auto params = frog::derive_params(d, p);
    const double y = uy(rng);
    const double lambda = -params.c.to_double() * std::log(y);
    const double gv = frog::build_g(params).evaluate(y);
    ASSERT_NEAR(frog::f_value(params, lambda), gv, 1e-9) << d << " " << p << " " << y;
    ++checked;
  }
}

TEST(BuildG, PointwiseDecreasingInArity) {
  const Rational p(2, 5);
  for (int d = 2; d <= 6; ++d) {
    const ExpPoly gd = frog::build_g(frog::derive_params(d, p));
    const ExpPoly gd1 = frog::build_g(frog::derive_params(d + 1, p));
    for (int i = 1; i <= 10; ++i) {
      const Interval y = Interval::from_rational(Rational(i, 10));
      EXPECT_TRUE((gd1.evaluate(y, 128) - gd.evaluate(y, 128)).certainly_negative()) << d << " y=" << i;
    }
  }
}
