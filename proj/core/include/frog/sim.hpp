#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "frog/params.hpp"

namespace frog {

using Rng = std::mt19937_64;

/// Independent stream for replication `index` of a run seeded with `seed`.
Rng replication_rng(std::uint64_t seed, std::uint64_t index);

/// Sleeping-frog law at each non-root site.
struct InitMeasure {
  enum class Kind { kOnePerSite, kPoisson };
  Kind kind = Kind::kOnePerSite;
  double mean = 1.0;  // Poisson mean; unused for one-per-site

  static InitMeasure one_per_site() { return {}; }
  static InitMeasure poisson(double mu);
  /// "one" or "poi:MU".
  static InitMeasure parse(const std::string& text);
  std::string to_string() const;
};

struct SimConfig {
  int depth = 10;                    // sites within this distance of the root hold frogs
  std::int64_t max_steps = 1000000;  // per-frog step cap
  std::uint64_t seed = 1;
  int replications = 200;
  int threads = 1;

  void validate() const;
};

struct SimSummary {
  std::string model;  // "fm" or "sfm"
  int d = 0;
  double p = 0.0;
  InitMeasure nu;
  SimConfig cfg;
  std::vector<std::int64_t> root_visits;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  /// Replications in which some frog hit the step cap.
  std::vector<int> capped_replications;

  double ci95_halfwidth() const { return 0.5 * (ci95_high - ci95_low); }
};

/// One draw of U(d, p, lambda) from the star process, particle by particle.
int sample_u(const DriftParams& params, double lambda, Rng& rng);

/// Empirical pmf of U over n samples drawn from independent per-sample streams.
std::vector<double> empirical_u_pmf(const DriftParams& params, double lambda, std::int64_t n,
                                    std::uint64_t seed, int threads = 1);

/// Self-similar frog model on the depth-truncated d-ary tree, 0 < p < 1/2.
SimSummary simulate_sfm(int d, double p, const InitMeasure& nu, const SimConfig& cfg);

/// Frog model on the depth-truncated d-ary tree, 0 < p < 1. Frogs stepping
/// below depth cfg.depth leave the tree; frogs at the root step to a child.
SimSummary simulate_fm(int d, double p, const InitMeasure& nu, const SimConfig& cfg);

/// Fills mean, variance and the normal-approximation 95% interval.
void summarize(SimSummary& s);

/// Total variation distance between two pmfs (shorter one padded with zeros).
double tv_distance(const std::vector<double>& a, const std::vector<double>& b);

/// max_k (CDF_b(k) - CDF_a(k)), i.e. how far b's CDF rises above a's.
double ks_one_sided(const std::vector<double>& a, const std::vector<double>& b);

/// Critical value of the one-sided two-sample KS statistic at level alpha.
double ks_critical(std::int64_t n, std::int64_t m, double alpha = 0.05);

}  // namespace frog
