#pragma once

#include "frog/interval.hpp"
#include "frog/rational.hpp"

namespace frog {

/// Exact parameters of the self-similar frog model SFM(d, p) and the
/// quantities derived from them. Construct through derive_params().
///
///   p_star       = p(d-1) / (d - (d+1)p)   first-step rootward probability
///   p_hat        = p / (1-p)               continuing rootward probability
///   phi_exponent = -(1 - p_star) / d       Phi_d = e^{phi_exponent}
///   lambda_rate  = (1 - p_hat) / (d-1)     Lambda_d = e^{-lambda_rate * lambda}
///   c            = (b-a)(d-1)              scale of lambda = -c log y, p = a/b
struct DriftParams {
  int d = 0;
  Rational p;
  Rational p_star;
  Rational p_hat;
  Rational phi_exponent;
  Rational lambda_rate;
  Rational c;

  long a() const { return p.num().get_si(); }
  long b() const { return p.den().get_si(); }
};

/// Validates 1/(d+1) < p < 1/2 (both ends strict) and computes every derived
/// field exactly. Throws OutOfRange otherwise.
DriftParams derive_params(int d, const Rational& p);

/// Same derivation, but the lower end p = 1/(d+1) is admitted. There the
/// top term of g has a zero y-exponent and g(0) gains an extra e^{-p*}.
DriftParams derive_params_closed(int d, const Rational& p);

/// True iff 1/(d+1) < p < 1/2.
bool drift_in_range(int d, const Rational& p);

}  // namespace frog
