#include "frog/interval.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "frog/errors.hpp"

namespace frog {

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::from_rational(const Rational& q, Precision prec, mpfr_rnd_t rnd) {
  BigFloat out(prec);
  mpfr_set_q(out.value_, q.get().get_mpq_t(), rnd);
  return out;
}

std::string BigFloat::to_string(int digits, mpfr_rnd_t rnd) const {
  if (mpfr_zero_p(value_)) return "0";
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, static_cast<std::size_t>(digits), value_, rnd);
  std::string mantissa(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mantissa.empty() && mantissa[0] == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  // mantissa is 0.DDDD * 10^exponent
  std::string out;
  if (exponent <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exponent), '0') + mantissa;
  } else if (static_cast<std::size_t>(exponent) >= mantissa.size()) {
    out = mantissa + std::string(static_cast<std::size_t>(exponent) - mantissa.size(), '0');
  } else {
    out = mantissa.substr(0, static_cast<std::size_t>(exponent)) + "." +
          mantissa.substr(static_cast<std::size_t>(exponent));
  }
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return sign + out;
}

Rational BigFloat::to_rational() const {
  if (!mpfr_number_p(value_)) throw InvalidArgument("non-finite binary float");
  mpz_class mantissa;
  const mpfr_exp_t exp = mpfr_get_z_2exp(mantissa.get_mpz_t(), value_);
  if (exp >= 0) {
    mpz_class scaled;
    mpz_mul_2exp(scaled.get_mpz_t(), mantissa.get_mpz_t(), static_cast<mp_bitcnt_t>(exp));
    return Rational(scaled);
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(-exp));
  return Rational(mantissa, den);
}

int compare(const BigFloat& a, double b) { return mpfr_cmp_d(a.raw(), b); }

// ---------------------------------------------------------------- Interval

namespace {

Precision max_prec(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

Interval::Interval(Precision prec) : lo_(prec), hi_(prec) {}

Interval::Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw InvalidArgument("interval with lo > hi");
}

Interval Interval::point(double value, Precision prec) {
  if (prec < 53) throw InvalidArgument("point interval needs at least 53 bits");
  return Interval(BigFloat(value, prec), BigFloat(value, prec));
}

Interval Interval::point(const BigFloat& value) { return Interval(value, value); }

Interval Interval::from_rational(const Rational& q, Precision prec) {
  return Interval(BigFloat::from_rational(q, prec, MPFR_RNDD),
                  BigFloat::from_rational(q, prec, MPFR_RNDU));
}

Interval Interval::from_integer(const mpz_class& n, Precision prec) {
  BigFloat lo(prec), hi(prec);
  mpfr_set_z(lo.raw(), n.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.raw(), n.get_mpz_t(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::symmetric(const BigFloat& radius) {
  BigFloat lo(radius.precision());
  mpfr_neg(lo.raw(), radius.raw(), MPFR_RNDD);
  return Interval(std::move(lo), radius);
}

Precision Interval::precision() const { return std::max(lo_.precision(), hi_.precision()); }

double Interval::mid_double() const { return mid().to_double(); }

BigFloat Interval::mid() const {
  BigFloat out(precision() + 1);
  mpfr_add(out.raw(), lo_.raw(), hi_.raw(), MPFR_RNDN);
  mpfr_div_2ui(out.raw(), out.raw(), 1, MPFR_RNDN);
  return out;
}

BigFloat Interval::width() const {
  BigFloat out(precision());
  mpfr_sub(out.raw(), hi_.raw(), lo_.raw(), MPFR_RNDU);
  return out;
}

BigFloat Interval::magnitude() const {
  BigFloat a(precision()), b(precision());
  mpfr_abs(a.raw(), lo_.raw(), MPFR_RNDU);
  mpfr_abs(b.raw(), hi_.raw(), MPFR_RNDU);
  return a < b ? b : a;
}

bool Interval::contains(const Rational& q) const {
  const mpq_srcptr v = q.get().get_mpq_t();
  return mpfr_cmp_q(lo_.raw(), v) <= 0 && mpfr_cmp_q(hi_.raw(), v) >= 0;
}

bool Interval::contains(double x) const { return compare(lo_, x) <= 0 && compare(hi_, x) >= 0; }

Interval Interval::rounded(Precision prec) const {
  BigFloat lo(prec), hi(prec);
  mpfr_set(lo.raw(), lo_.raw(), MPFR_RNDD);
  mpfr_set(hi.raw(), hi_.raw(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval Interval::operator-() const {
  BigFloat lo(precision()), hi(precision());
  mpfr_neg(lo.raw(), hi_.raw(), MPFR_RNDD);
  mpfr_neg(hi.raw(), lo_.raw(), MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval& Interval::operator+=(const Interval& rhs) {
  const Precision p = max_prec(*this, rhs);
  BigFloat lo(p), hi(p);
  mpfr_add(lo.raw(), lo_.raw(), rhs.lo_.raw(), MPFR_RNDD);
  mpfr_add(hi.raw(), hi_.raw(), rhs.hi_.raw(), MPFR_RNDU);
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

Interval& Interval::operator-=(const Interval& rhs) {
  const Precision p = max_prec(*this, rhs);
  BigFloat lo(p), hi(p);
  mpfr_sub(lo.raw(), lo_.raw(), rhs.hi_.raw(), MPFR_RNDD);
  mpfr_sub(hi.raw(), hi_.raw(), rhs.lo_.raw(), MPFR_RNDU);
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

Interval& Interval::operator*=(const Interval& rhs) {
  const Precision p = max_prec(*this, rhs);
  BigFloat lo(p), hi(p);
  if (lo_.sign() >= 0 && rhs.lo_.sign() >= 0) {
    mpfr_mul(lo.raw(), lo_.raw(), rhs.lo_.raw(), MPFR_RNDD);
    mpfr_mul(hi.raw(), hi_.raw(), rhs.hi_.raw(), MPFR_RNDU);
  } else {
    const mpfr_srcptr a[2] = {lo_.raw(), hi_.raw()};
    const mpfr_srcptr b[2] = {rhs.lo_.raw(), rhs.hi_.raw()};
    BigFloat t(p);
    bool first = true;
    for (const auto x : a) {
      for (const auto y : b) {
        mpfr_mul(t.raw(), x, y, MPFR_RNDD);
        if (first || t < lo) mpfr_set(lo.raw(), t.raw(), MPFR_RNDN);
        mpfr_mul(t.raw(), x, y, MPFR_RNDU);
        if (first || t > hi) mpfr_set(hi.raw(), t.raw(), MPFR_RNDN);
        first = false;
      }
    }
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

Interval& Interval::operator/=(const Interval& rhs) {
  if (rhs.contains_zero()) throw DivisionByZero("interval division by an interval containing zero");
  const Precision p = max_prec(*this, rhs);
  BigFloat lo(p), hi(p), t(p);
  const mpfr_srcptr a[2] = {lo_.raw(), hi_.raw()};
  const mpfr_srcptr b[2] = {rhs.lo_.raw(), rhs.hi_.raw()};
  bool first = true;
  for (const auto x : a) {
    for (const auto y : b) {
      mpfr_div(t.raw(), x, y, MPFR_RNDD);
      if (first || t < lo) mpfr_set(lo.raw(), t.raw(), MPFR_RNDN);
      mpfr_div(t.raw(), x, y, MPFR_RNDU);
      if (first || t > hi) mpfr_set(hi.raw(), t.raw(), MPFR_RNDN);
      first = false;
    }
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

std::string Interval::to_string(int digits) const {
  return "[" + lo_.to_string(digits, MPFR_RNDD) + ", " + hi_.to_string(digits, MPFR_RNDU) + "]";
}

Interval pow(const Interval& x, unsigned long n) {
  const Precision p = x.precision();
  if (n == 0) return Interval::point(BigFloat(1.0, p));
  BigFloat lo(p), hi(p);
  if (x.lo().sign() >= 0) {
    mpfr_pow_ui(lo.raw(), x.lo().raw(), n, MPFR_RNDD);
    mpfr_pow_ui(hi.raw(), x.hi().raw(), n, MPFR_RNDU);
  } else if (x.hi().sign() <= 0) {
    // |x| in [|hi|, |lo|]
    BigFloat alo(p), ahi(p);
    mpfr_neg(alo.raw(), x.hi().raw(), MPFR_RNDN);
    mpfr_neg(ahi.raw(), x.lo().raw(), MPFR_RNDN);
    if (n % 2 == 0) {
      mpfr_pow_ui(lo.raw(), alo.raw(), n, MPFR_RNDD);
      mpfr_pow_ui(hi.raw(), ahi.raw(), n, MPFR_RNDU);
    } else {
      mpfr_pow_ui(lo.raw(), x.lo().raw(), n, MPFR_RNDD);
      mpfr_pow_ui(hi.raw(), x.hi().raw(), n, MPFR_RNDU);
    }
  } else {
    BigFloat a(p), b(p);
    mpfr_pow_ui(b.raw(), x.hi().raw(), n, MPFR_RNDU);
    if (n % 2 == 0) {
      mpfr_pow_ui(a.raw(), x.lo().raw(), n, MPFR_RNDU);
      mpfr_set_zero(lo.raw(), 1);
      hi = a < b ? b : a;
    } else {
      mpfr_pow_ui(lo.raw(), x.lo().raw(), n, MPFR_RNDD);
      hi = b;
    }
  }
  return Interval(std::move(lo), std::move(hi));
}

Interval scale_by_integer(const Interval& x, const mpz_class& n) {
  return x * Interval::from_integer(n, x.precision());
}

Interval divide_by_integer(const Interval& x, unsigned long n) {
  if (n == 0) throw DivisionByZero("interval divided by integer zero");
  const Precision p = x.precision();
  BigFloat lo(p), hi(p);
  mpfr_div_ui(lo.raw(), x.lo().raw(), n, MPFR_RNDD);
  mpfr_div_ui(hi.raw(), x.hi().raw(), n, MPFR_RNDU);
  return Interval(std::move(lo), std::move(hi));
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(a.lo() < b.lo() ? a.lo() : b.lo(), a.hi() > b.hi() ? a.hi() : b.hi());
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  const BigFloat& lo = a.lo() < b.lo() ? b.lo() : a.lo();
  const BigFloat& hi = a.hi() > b.hi() ? b.hi() : a.hi();
  if (hi < lo) return std::nullopt;
  return Interval(lo, hi);
}

// ----------------------------------------------------------- exp enclosure

namespace {

Interval exp_series(const Rational& q, Precision prec) {
  // Halve until |r| <= 1/2, so e^r = (e^{q / 2^s}) and e^q = (e^r)^(2^s).
  Rational r = q;
  unsigned squarings = 0;
  const Rational half(1, 2);
  while (abs(r) > half) {
    r /= Rational(2);
    ++squarings;
  }
  const Precision work = prec + 32 + static_cast<Precision>(squarings);

  const Interval arg = Interval::from_rational(r, work);
  BigFloat arg_mag = arg.magnitude();

  Interval sum = Interval::point(BigFloat(1.0, work));
  Interval term = sum;
  // Remainder after the n-th partial sum: |e^xi r^{n+1}/(n+1)!| <= 2 |r|^{n+1}/(n+1)!.
  BigFloat next_mag(work);
  mpfr_set(next_mag.raw(), arg_mag.raw(), MPFR_RNDU);  // |r|^1 / 1!
  BigFloat tolerance(work);
  mpfr_set_ui_2exp(tolerance.raw(), 1, -static_cast<mpfr_exp_t>(work), MPFR_RNDN);

  unsigned long n = 0;
  while (true) {
    BigFloat remainder(work);
    mpfr_mul_ui(remainder.raw(), next_mag.raw(), 2, MPFR_RNDU);
    if (remainder <= tolerance || next_mag.is_zero()) {
      sum += Interval::symmetric(remainder);
      break;
    }
    ++n;
    term = divide_by_integer(term * arg, n);
    sum += term;
    mpfr_mul(next_mag.raw(), next_mag.raw(), arg_mag.raw(), MPFR_RNDU);
    mpfr_div_ui(next_mag.raw(), next_mag.raw(), n + 1, MPFR_RNDU);
  }

  for (unsigned i = 0; i < squarings; ++i) sum = pow(sum, 2);
  return sum.rounded(prec);
}

}  // namespace

Interval exp_enclosure(const Rational& q, Precision prec) {
  if (prec < 16) throw InvalidArgument("exp_enclosure needs at least 16 bits of precision");
  if (q.is_zero()) return Interval::point(BigFloat(1.0, prec));
  Interval raw = exp_series(q, prec);
  if (prec / 2 >= 16) {
    if (auto nested = intersect(raw, exp_enclosure(q, prec / 2))) return *nested;
    throw InvalidArgument("exp enclosures at different precisions are disjoint");
  }
  return raw;
}

}  // namespace frog
