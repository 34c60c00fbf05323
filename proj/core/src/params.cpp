#include "frog/params.hpp"

#include <string>

#include "frog/errors.hpp"

namespace frog {

namespace {

DriftParams derive_unchecked(int d, const Rational& p) {
  DriftParams out;
  out.d = d;
  out.p = p;
  const Rational dd(d);
  out.p_star = p * (dd - Rational(1)) / (dd - (dd + Rational(1)) * p);
  out.p_hat = p / (Rational(1) - p);
  out.phi_exponent = -(Rational(1) - out.p_star) / dd;
  out.lambda_rate = (Rational(1) - out.p_hat) / (dd - Rational(1));
  out.c = Rational(mpz_class(p.den() - p.num())) * (dd - Rational(1));
  return out;
}

void check_arity(int d) {
  if (d < 2) throw OutOfRange("tree arity d must be at least 2, got " + std::to_string(d));
}

}  // namespace

bool drift_in_range(int d, const Rational& p) {
  return d >= 2 && p > Rational(1, d + 1) && p < Rational(1, 2);
}

DriftParams derive_params(int d, const Rational& p) {
  check_arity(d);
  if (!drift_in_range(d, p)) {
    throw OutOfRange("drift p = " + p.to_string() + " is outside (1/" + std::to_string(d + 1) +
                     ", 1/2) for d = " + std::to_string(d));
  }
  return derive_unchecked(d, p);
}

DriftParams derive_params_closed(int d, const Rational& p) {
  check_arity(d);
  if (p < Rational(1, d + 1) || p >= Rational(1, 2)) {
    throw OutOfRange("drift p = " + p.to_string() + " is outside [1/" + std::to_string(d + 1) +
                     ", 1/2) for d = " + std::to_string(d));
  }
  return derive_unchecked(d, p);
}

}  // namespace frog
