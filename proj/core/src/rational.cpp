#include "frog/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "frog/errors.hpp"

namespace frog {

namespace {

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  std::string digits(text);
  if (digits.empty() || digits == "-" || digits == "+") {
    throw ParseError("not a rational literal: '" + std::string(whole) + "'");
  }
  std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
  for (std::size_t i = start; i < digits.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(digits[i]))) {
      throw ParseError("not a rational literal: '" + std::string(whole) + "'");
    }
  }
  if (digits[0] == '+') digits.erase(0, 1);
  return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value) {
  if (value_.get_den() == 0) throw DivisionByZero("rational with zero denominator");
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const mpz_class num = parse_integer(text.substr(0, slash), text);
  const mpz_class den = parse_integer(text.substr(slash + 1), text);
  return Rational(num, den);
}

Rational Rational::parse_numeric(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return parse(text);
  if (text.find_first_of("eE/") != std::string_view::npos) {
    throw ParseError("unsupported numeric literal: '" + std::string(text) + "'");
  }
  std::string int_part(text.substr(0, dot));
  const std::string_view frac = text.substr(dot + 1);
  const bool negative = !int_part.empty() && int_part[0] == '-';
  if (int_part.empty() || int_part == "-" || int_part == "+") int_part += "0";
  const mpz_class whole = parse_integer(int_part, text);
  mpz_class frac_num = frac.empty() ? mpz_class(0) : parse_integer(frac, text);
  if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) {
    throw ParseError("not a decimal literal: '" + std::string(text) + "'");
  }
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
  mpz_class num = abs(whole) * scale + frac_num;
  if (negative) num = -num;
  return Rational(num, scale);
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("non-finite double");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return Rational(q);
}

std::string Rational::to_string() const { return value_.get_str(10); }

mpz_class Rational::floor() const {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DivisionByZero("division of " + to_string() + " by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get().get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get().get_den_mpz_t(), exponent);
  return Rational(num, den);
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace frog
