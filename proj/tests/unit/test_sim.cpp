#include <gtest/gtest.h>

#include <cmath>

#include "frog/errors.hpp"
#include "frog/params.hpp"
#include "frog/sim.hpp"
#include "frog/u_dist.hpp"

using frog::InitMeasure;
using frog::Rational;
using frog::SimConfig;

namespace {

SimConfig config(int depth, int reps, std::uint64_t seed = 1, int threads = 1) {
  SimConfig cfg;
  cfg.depth = depth;
  cfg.replications = reps;
  cfg.seed = seed;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

TEST(SampleU, RangeAndDeterminism) {
  const auto params = frog::derive_params(4, Rational(1, 4) + Rational(1, 100));
  auto r1 = frog::replication_rng(9, 0);
  auto r2 = frog::replication_rng(9, 0);
  for (int i = 0; i < 2000; ++i) {
    const int a = frog::sample_u(params, 1.5, r1);
    ASSERT_GE(a, 0);
    ASSERT_LE(a, 3);
    ASSERT_EQ(a, frog::sample_u(params, 1.5, r2));
  }
}

TEST(SampleU, MatchesExactPmf) {
  const std::vector<std::tuple<int, Rational, double>> cases = {
      {2, Rational(2, 5), 1.0}, {3, Rational(3, 10), 1.0}, {4, Rational(1, 4), 1.5},
      {5, Rational(11, 50), 2.0}, {2, Rational(2, 5), 0.0}};
  for (const auto& [d, p, lambda] : cases) {
    if (!frog::drift_in_range(d, p)) continue;
    const auto params = frog::derive_params(d, p);
    const auto emp = frog::empirical_u_pmf(params, lambda, 100000, 42);
    EXPECT_LT(frog::tv_distance(emp, frog::u_pmf(params, lambda).probs), 0.01) << d << " " << p << " " << lambda;
  }
}

TEST(SampleU, ArityDominanceWithinKsTolerance) {
  const Rational p(7, 20);
  const std::int64_t n = 100000;
  for (int d = 2; d <= 5; ++d) {
    const auto a = frog::empirical_u_pmf(frog::derive_params(d, p), 1.0, n, 5);
    const auto b = frog::empirical_u_pmf(frog::derive_params(d + 1, p), 1.0, n, 6);
    // CDF at arity d+1 should lie below the CDF at arity d
    const double excess = frog::ks_one_sided(a, b);
    EXPECT_LE(excess, frog::ks_critical(n, n)) << d;
  }
}

TEST(SampleU, EmpiricalPmfThreadInvariant) {
  const auto params = frog::derive_params(3, Rational(3, 10));
  EXPECT_EQ(frog::empirical_u_pmf(params, 1.0, 20000, 3, 1), frog::empirical_u_pmf(params, 1.0, 20000, 3, 4));
}

TEST(InitMeasure, Parse) {
  EXPECT_EQ(InitMeasure::parse("one").kind, InitMeasure::Kind::kOnePerSite);
  const auto poi = InitMeasure::parse("poi:1.5");
  EXPECT_EQ(poi.kind, InitMeasure::Kind::kPoisson);
  EXPECT_DOUBLE_EQ(poi.mean, 1.5);
  EXPECT_EQ(poi.to_string(), InitMeasure::parse(poi.to_string()).to_string());
  EXPECT_THROW(InitMeasure::parse("two"), frog::ParseError);
  EXPECT_THROW(InitMeasure::parse("poi:-1"), frog::OutOfRange);
}

TEST(Simulate, DeterministicAcrossThreads) {
  const auto a = frog::simulate_sfm(3, 0.3, InitMeasure::one_per_site(), config(8, 60, 7, 1));
  const auto b = frog::simulate_sfm(3, 0.3, InitMeasure::one_per_site(), config(8, 60, 7, 3));
  EXPECT_EQ(a.root_visits, b.root_visits);
  EXPECT_EQ(a.mean, b.mean);
  const auto c = frog::simulate_fm(2, 0.3, InitMeasure::poisson(1.0), config(8, 60, 7, 1));
  const auto e = frog::simulate_fm(2, 0.3, InitMeasure::poisson(1.0), config(8, 60, 7, 2));
  EXPECT_EQ(c.root_visits, e.root_visits);
}

TEST(Simulate, CountsAreNonnegativeAndSummaryConsistent) {
  const auto s = frog::simulate_sfm(2, 0.35, InitMeasure::one_per_site(), config(9, 100));
  ASSERT_EQ(s.root_visits.size(), 100u);
  double sum = 0.0;
  for (auto v : s.root_visits) {
    EXPECT_GE(v, 0);
    sum += static_cast<double>(v);
  }
  EXPECT_DOUBLE_EQ(s.mean, sum / 100.0);
  EXPECT_LE(s.ci95_low, s.mean);
  EXPECT_GE(s.ci95_high, s.mean);
  EXPECT_TRUE(s.capped_replications.empty());
}

TEST(Simulate, FullDriftAlwaysReturns) {
  const auto s = frog::simulate_fm(2, 0.5, InitMeasure::one_per_site(), config(10, 50));
  for (auto v : s.root_visits) EXPECT_GE(v, 1);
}

TEST(Simulate, SimpleWalkRegimeContrast) {
  const auto d5 = frog::simulate_fm(5, 1.0 / 6.0, InitMeasure::one_per_site(), config(10, 100));
  const auto d2 = frog::simulate_fm(2, 1.0 / 3.0, InitMeasure::one_per_site(), config(10, 100));
  EXPECT_LT(d5.ci95_high, d2.ci95_low);
}

TEST(Simulate, SelfSimilarBelowFull) {
  const auto sfm = frog::simulate_sfm(2, 0.3, InitMeasure::one_per_site(), config(10, 200));
  const auto fm = frog::simulate_fm(2, 0.3, InitMeasure::one_per_site(), config(10, 200));
  EXPECT_LE(sfm.mean, fm.mean + 2.0 * (sfm.ci95_halfwidth() + fm.ci95_halfwidth()));
}

TEST(Simulate, RejectsBadInputs) {
  EXPECT_THROW(frog::simulate_sfm(2, 0.5, InitMeasure::one_per_site(), config(5, 5)), frog::OutOfRange);
  EXPECT_THROW(frog::simulate_fm(1, 0.3, InitMeasure::one_per_site(), config(5, 5)), frog::OutOfRange);
  EXPECT_THROW(frog::simulate_fm(2, 0.3, InitMeasure::one_per_site(), config(0, 5)), frog::InvalidArgument);
}

TEST(Stats, DistancesAndCritical) {
  EXPECT_DOUBLE_EQ(frog::tv_distance({0.5, 0.5}, {0.25, 0.75}), 0.25);
  EXPECT_DOUBLE_EQ(frog::tv_distance({1.0}, {0.5, 0.5}), 0.5);
  EXPECT_DOUBLE_EQ(frog::ks_one_sided({0.2, 0.8}, {0.5, 0.5}), 0.3);
  EXPECT_NEAR(frog::ks_critical(100000, 100000), std::sqrt(-std::log(0.05) / 2.0 * 2.0 / 100000.0), 1e-15);
}
