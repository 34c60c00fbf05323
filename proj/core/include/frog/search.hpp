#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frog/certify.hpp"
#include "frog/params.hpp"
#include "frog/rational.hpp"

namespace frog {

/// Numeric sup over lambda >= 0 of f(lambda), equivalently max of g on (0, 1].
/// Grid of step 1e-3 in s = lambda / (1 + lambda) (s = 1 is the lambda -> inf
/// limit) followed by golden-section refinement. Not certified.
double m_value(const DriftParams& params, int threads = 1);

/// Lambda at which m_value's maximum was located (infinity for the limit).
struct MaxLocation {
  double value = 0.0;
  double lambda = 0.0;
};
MaxLocation m_value_location(const DriftParams& params, int threads = 1);

/// Stern-Brocot upper approximants of target in (0, 1): every fraction on the
/// path to target that lies at or above it, with denominator at most
/// max_denominator, in decreasing order. An exact hit ends the sequence.
std::vector<Rational> rational_candidates(double target, long max_denominator);

struct TraceEntry {
  Rational p;
  double m_numeric = 0.0;
  std::string status;  // BELOW_WINDOW, NOT_BELOW_ONE, or a certificate verdict
};

struct BoundResult {
  int d = 0;
  Rational p;
  Certificate certificate;
  std::vector<TraceEntry> search_trace;
};

struct QCritResult {
  int d = 0;
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
};

/// Descends the Stern-Brocot upper approximants of q_d from 1/2 and returns
/// the first p whose numeric M lies in (window, 1) and whose certificate has
/// window < sup_lower_bound <= sup_upper_bound < 1. Throws SearchExhausted.
BoundResult rigorous_bound(int d, const CertifyConfig& cfg = {}, double window = 0.9994,
                           long max_denominator = 1000000, int threads = 1);

/// Bisection on p over (1/(d+1), 1/2) with the predicate m_value < 1.
QCritResult q_crit(int d, double tol, int threads = 1);

struct ApproxOptions {
  /// Starting drift; defaults to the reference bound for d-1 (11/54 beyond
  /// d = 14, 9/20 at d = 2).
  std::optional<Rational> start;
  Rational decrement{1, 10000};
  Rational grid_step{1, 100};
  int grid_points = 100;
  /// When false the grid is extended past its last point while f is still
  /// increasing there, so a maximum beyond the grid is not missed.
  bool strict_grid = false;
  double max_lambda = 200.0;
  int threads = 1;
};

struct ApproxResult {
  int d = 0;
  Rational p;
  double value = 0.0;
  int steps = 0;
  /// Largest lambda evaluated for the returned p.
  double lambda_reach = 0.0;
};

/// Grid procedure: starting from a passing p, check f < 1 on the lambda grid
/// and lower p by the decrement until the check fails; returns the last
/// passing p. If the start itself fails, p is raised until it passes.
ApproxResult approx_bound(int d, const ApproxOptions& opts = {});

/// Reference bounds for 2 <= d <= 13, each certified by certify_sup_below_one
/// with sup in (0.9994, 1).
std::optional<Rational> reference_bound(int d);

struct FigureRow {
  int m = 0;
  double bound = 0.0;
  std::string mode;  // "rigorous" or "approx"
  Rational p;
};

struct FigureOptions {
  bool search = false;  // run rigorous_bound instead of certifying the reference values
  CertifyConfig cfg;
  ApproxOptions approx;
  int threads = 1;
};

/// Rows for 2 <= dmin <= m <= dmax. Rigorous rows for m <= 13, approximate
/// rows beyond, where each approximate descent starts from the previous row.
std::vector<FigureRow> figure_rows(int dmin, int dmax, const FigureOptions& opts = {});

}  // namespace frog
