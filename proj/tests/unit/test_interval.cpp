#include <gtest/gtest.h>

#include <mpfr.h>

#include <random>

#include "frog/interval.hpp"

using frog::BigFloat;
using frog::Interval;
using frog::Rational;

namespace {

// Reference value from MPFR's correctly rounded exp at a much higher precision.
BigFloat mpfr_reference(const Rational& q, frog::Precision prec) {
  BigFloat x = BigFloat::from_rational(q, prec, MPFR_RNDN);
  BigFloat out(prec);
  mpfr_exp(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

}  // namespace

TEST(ExpEnclosure, ZeroIsExactlyOne) {
  for (frog::Precision p : {53, 128, 512}) {
    const Interval e = frog::exp_enclosure(Rational(0), p);
    EXPECT_EQ(compare(e.lo(), 1.0), 0);
    EXPECT_EQ(compare(e.hi(), 1.0), 0);
  }
}

TEST(ExpEnclosure, MinusOneThirdAt64Bits) {
  const Interval e = frog::exp_enclosure(Rational(-1, 3), 64);
  EXPECT_NEAR(e.mid_double(), 0.71653131057378925, 1e-16);
  EXPECT_LT(e.width_double(), 1e-17);
  EXPECT_TRUE(e.contains(mpfr_reference(Rational(-1, 3), 256)));
}

TEST(ExpEnclosure, OneAt64Bits) {
  const Interval e = frog::exp_enclosure(Rational(1), 64);
  EXPECT_NEAR(e.mid_double(), 2.718281828459045, 1e-15);
  EXPECT_TRUE(e.contains(mpfr_reference(Rational(1), 256)));
}

TEST(ExpEnclosure, ContainsMpfrReferenceOnRandomRationals) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-4000, 4000), den(1, 400);
  for (int i = 0; i < 500; ++i) {
    const Rational q(num(rng), den(rng));
    const Interval e = frog::exp_enclosure(q, 128);
    EXPECT_TRUE(e.contains(mpfr_reference(q, 1024))) << q;
  }
}

TEST(ExpEnclosure, NestedAcrossPrecisionAndReciprocalProduct) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-10000, 10000), den(1, 1000);
  for (int i = 0; i < 10000; ++i) {
    const Rational q(num(rng), den(rng));
    if (q > Rational(10) || q < Rational(-10)) continue;
    const Interval fine = frog::exp_enclosure(q, 128);
    const Interval coarse = frog::exp_enclosure(q, 64);
    ASSERT_TRUE(coarse.contains(fine)) << q;
    const Interval prod = fine * frog::exp_enclosure(-q, 128);
    ASSERT_TRUE(prod.contains(1.0)) << q;
  }
}

TEST(Interval, ArithmeticContainsExactResult) {
  const Interval a = Interval::from_rational(Rational(1, 3));
  const Interval b = Interval::from_rational(Rational(2, 7));
  EXPECT_TRUE((a + b).contains(Rational(13, 21)));
  EXPECT_TRUE((a - b).contains(Rational(1, 21)));
  EXPECT_TRUE((a * b).contains(Rational(2, 21)));
  EXPECT_TRUE((a / b).contains(Rational(7, 6)));
  EXPECT_TRUE(frog::pow(a, 5).contains(Rational(1, 243)));
}

TEST(Interval, ProductOfSignedIntervals) {
  const Interval a(BigFloat(-1.0, 64), BigFloat(2.0, 64));
  const Interval b(BigFloat(-3.0, 64), BigFloat(0.5, 64));
  const Interval p = a * b;
  EXPECT_EQ(p.lo_double(), -6.0);
  EXPECT_EQ(p.hi_double(), 3.0);
  const Interval sq = frog::pow(a, 2);
  EXPECT_EQ(sq.lo_double(), 0.0);
  EXPECT_EQ(sq.hi_double(), 4.0);
}

TEST(Interval, HullAndIntersect) {
  const Interval a(BigFloat(0.0, 64), BigFloat(1.0, 64));
  const Interval b(BigFloat(0.5, 64), BigFloat(2.0, 64));
  const Interval h = frog::hull(a, b);
  EXPECT_EQ(h.lo_double(), 0.0);
  EXPECT_EQ(h.hi_double(), 2.0);
  const auto i = frog::intersect(a, b);
  ASSERT_TRUE(i.has_value());
  EXPECT_EQ(i->lo_double(), 0.5);
  EXPECT_FALSE(frog::intersect(a, Interval::point(3.0)).has_value());
}
