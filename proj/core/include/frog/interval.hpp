#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <mpfr.h>

#include "frog/rational.hpp"

namespace frog {

using Precision = mpfr_prec_t;

/// Working precision that every certified computation starts from.
inline constexpr Precision kDefaultPrecision = 128;

/// Owning RAII handle to an MPFR binary float. Values are dyadic rationals
/// with a fixed mantissa width (the precision).
class BigFloat {
 public:
  explicit BigFloat(Precision prec = kDefaultPrecision);
  BigFloat(double value, Precision prec);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat from_rational(const Rational& q, Precision prec, mpfr_rnd_t rnd);

  Precision precision() const { return mpfr_get_prec(value_); }
  mpfr_ptr raw() { return value_; }
  mpfr_srcptr raw() const { return value_; }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  /// Decimal rendering with `digits` significant digits, rounded in `rnd`.
  std::string to_string(int digits = 30, mpfr_rnd_t rnd = MPFR_RNDN) const;
  /// Exact value as a rational (every finite binary float is dyadic).
  Rational to_rational() const;

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.value_, b.value_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.value_, b.value_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.value_, b.value_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_); }

 private:
  mpfr_t value_;
};

int compare(const BigFloat& a, double b);

/// Closed interval [lo, hi] of binary floats. Every operation rounds the
/// lower endpoint toward -inf and the upper endpoint toward +inf, so the
/// result contains every pointwise result of its operands. The result
/// precision is the larger of the operand precisions.
class Interval {
 public:
  explicit Interval(Precision prec = kDefaultPrecision);
  Interval(BigFloat lo, BigFloat hi);

  static Interval point(double value, Precision prec = kDefaultPrecision);
  static Interval point(const BigFloat& value);
  static Interval from_rational(const Rational& q, Precision prec = kDefaultPrecision);
  static Interval from_integer(const mpz_class& n, Precision prec = kDefaultPrecision);
  /// [-r, r] for r >= 0.
  static Interval symmetric(const BigFloat& radius);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  Precision precision() const;

  double lo_double() const { return lo_.to_double(MPFR_RNDD); }
  double hi_double() const { return hi_.to_double(MPFR_RNDU); }
  double mid_double() const;
  BigFloat mid() const;
  /// hi - lo rounded up.
  BigFloat width() const;
  double width_double() const { return width().to_double(MPFR_RNDU); }
  /// max(|lo|, |hi|).
  BigFloat magnitude() const;

  bool contains(const Rational& q) const;
  bool contains(const BigFloat& x) const { return lo_ <= x && x <= hi_; }
  bool contains(double x) const;
  bool contains(const Interval& inner) const { return lo_ <= inner.lo_ && inner.hi_ <= hi_; }
  bool is_point() const { return lo_ == hi_; }
  bool certainly_positive() const { return lo_.sign() > 0; }
  bool certainly_negative() const { return hi_.sign() < 0; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

  /// Outward rounding of both endpoints to `prec` bits.
  Interval rounded(Precision prec) const;

  Interval operator-() const;
  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }

  std::string to_string(int digits = 20) const;

 private:
  BigFloat lo_;
  BigFloat hi_;
};

/// x^n for a nonnegative integer n, with 0^0 = 1.
Interval pow(const Interval& x, unsigned long n);
Interval scale_by_integer(const Interval& x, const mpz_class& n);
Interval divide_by_integer(const Interval& x, unsigned long n);
Interval hull(const Interval& a, const Interval& b);
std::optional<Interval> intersect(const Interval& a, const Interval& b);

/// Certified enclosure of e^q. Argument reduction to |r| <= 1/2, Taylor
/// series with a Lagrange remainder bound, then repeated squaring, all in
/// outward-rounded arithmetic. The width is at most 2^-(prec-4) * e^q and
/// enclosures are nested in precision: exp_enclosure(q, p) is contained in
/// exp_enclosure(q, p / 2).
Interval exp_enclosure(const Rational& q, Precision prec);

}  // namespace frog
