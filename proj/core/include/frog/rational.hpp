#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace frog {

/// Exact rational number backed by GMP. Always in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpz_class& value) : value_(value) {}
  explicit Rational(const mpq_class& value);

  /// Parses "a/b" or an integer literal "a". Decimal points are rejected.
  static Rational parse(std::string_view text);
  /// Parses "a/b", an integer, or a finite decimal such as "0.3459"; the
  /// decimal is converted exactly (3459/10000).
  static Rational parse_numeric(std::string_view text);
  /// Exact value of a finite double (a dyadic rational).
  static Rational from_double(double value);

  mpz_class num() const { return value_.get_num(); }
  mpz_class den() const { return value_.get_den(); }
  const mpq_class& get() const { return value_; }

  double to_double() const { return value_.get_d(); }
  std::string to_string() const;
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  /// Largest integer <= value.
  mpz_class floor() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

Rational abs(const Rational& x);
Rational pow(const Rational& base, unsigned exponent);
/// Binomial coefficient C(n, k) as an exact integer.
mpz_class binomial(unsigned long n, unsigned long k);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace frog

template <>
struct std::hash<frog::Rational> {
  std::size_t operator()(const frog::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.to_string());
  }
};
