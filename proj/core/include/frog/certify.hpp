#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frog/genfun.hpp"
#include "frog/interval.hpp"

namespace frog {

enum class Verdict { kCertifiedBelowOne, kFailedExceedsOne, kInconclusive };

/// "CERTIFIED_BELOW_ONE", "FAILED_EXCEEDS_ONE" or "INCONCLUSIVE".
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& text);

struct CertifyConfig {
  Precision initial_precision_bits = kDefaultPrecision;
  Precision max_precision_bits = 4096;
  double min_box_width = 0x1p-60;
  /// Bracket tolerance: the search stops once sup_upper_bound - sup_lower_bound
  /// is at most this (and sup_upper_bound < 1).
  double target_gap = 1e-6;
  /// Box budget per precision level.
  std::int64_t max_boxes = 200000;
  /// Also run verify_unique_max and record the outcome in the certificate.
  bool check_unique_max = false;

  /// Throws InvalidArgument on inconsistent settings.
  void validate() const;
};

enum class UniqueMax { kUnique, kNotUnique, kIndeterminate };
std::string to_string(UniqueMax u);

struct Certificate {
  int d = 0;
  long a = 0;
  long b = 0;
  Verdict verdict = Verdict::kInconclusive;
  BigFloat sup_upper_bound;
  BigFloat sup_lower_bound;
  BigFloat argmax_estimate;
  Precision precision_bits = 0;
  std::int64_t boxes_processed = 0;
  /// Whether the bracket reached cfg.target_gap (false when a certified
  /// verdict was reached only at the box budget or minimum width).
  bool gap_reached = false;
  bool unique_max_verified = false;
  UniqueMax unique_max = UniqueMax::kIndeterminate;
  CertifyConfig config;
};

/// Range enclosure of an ExpPoly over subintervals of [0, 1]. Combines sparse
/// interval Horner with a Taylor model around the box center whose order is
/// picked from a floating-point estimate of the Lagrange remainder. Results
/// are rigorous regardless of that estimate.
class PolyEncloser {
 public:
  PolyEncloser(const ExpPoly& poly, Precision prec, int max_order = 40);

  Precision precision() const { return prec_; }
  /// Horner-only enclosure.
  Interval horner(const Interval& y) const;
  /// Enclosure of {p(y) : y in box}. `target_width` steers the Taylor order;
  /// it does not affect soundness.
  Interval enclose(const Interval& box, double target_width) const;
  /// Enclosure of p at a single point.
  Interval at(const BigFloat& y) const { return horner(Interval::point(y)); }

 private:
  Interval taylor(const Interval& box, double target_width) const;

  Precision prec_;
  int max_order_;
  std::vector<long> exps_;
  std::vector<Interval> coeffs_;
  std::vector<double> log_abs_;                   // log |c_j| (upper), for order selection
  std::vector<std::vector<Interval>> scaled_;     // c_j * C(j, k), k < max_order
  std::vector<Interval> abs_coeffs_;              // [0, |c_j|]
};

/// Enclosure of {g(y) : y in y_box} for y_box inside [0, 1].
Interval eval_interval(const ExpPoly& g, const Interval& y_box, Precision precision_bits);

/// Best-first interval branch-and-bound for sup_{y in [0,1]} g(y).
Certificate certify_sup_below_one(const ExpPoly& g, const CertifyConfig& cfg = {});

/// Certified sign pattern of g' on (0, 1]: kUnique iff g' has exactly one
/// sign change there, from + to -.
UniqueMax verify_unique_max(const ExpPoly& g, const CertifyConfig& cfg = {});

/// Rebuilds g from (d, a, b), reruns the certification with the recorded
/// configuration and checks that verdict, bounds and box count reproduce,
/// and that a 4x-precision evaluation at the argmax stays below the bound.
bool recheck_certificate(const Certificate& cert);

}  // namespace frog
