#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frog/interval.hpp"
#include "frog/params.hpp"
#include "frog/rational.hpp"

namespace frog {

/// Finite formal sum  sum_i c_i * e^{q_i}  with rational c_i and q_i.
/// Keys (the exponents q) are unique and zero coefficients are purged.
class ExpRational {
 public:
  using Terms = std::map<Rational, Rational>;  // q -> c

  ExpRational() = default;
  ExpRational(const Rational& c) : ExpRational(c, Rational(0)) {}  // NOLINT(google-explicit-constructor)
  /// c * e^q
  ExpRational(const Rational& c, const Rational& q);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  ExpRational& operator+=(const ExpRational& rhs);
  ExpRational& operator-=(const ExpRational& rhs);
  ExpRational& operator*=(const ExpRational& rhs);
  ExpRational& operator*=(const Rational& scalar);
  ExpRational operator-() const;

  friend ExpRational operator+(ExpRational a, const ExpRational& b) { return a += b; }
  friend ExpRational operator-(ExpRational a, const ExpRational& b) { return a -= b; }
  friend ExpRational operator*(ExpRational a, const ExpRational& b) { return a *= b; }
  friend ExpRational operator*(ExpRational a, const Rational& s) { return a *= s; }
  friend bool operator==(const ExpRational& a, const ExpRational& b) { return a.terms_ == b.terms_; }

  Interval enclose(Precision prec) const;
  double to_double() const;
  std::string to_string() const;

 private:
  void add_term(const Rational& q, const Rational& c);

  Terms terms_;
};

/// Arity and drift a/b a polynomial was built for, plus c = (b-a)(d-1).
struct GProvenance {
  int d = 0;
  long a = 0;
  long b = 0;
  Rational c;
};

/// Univariate polynomial in y with nonnegative integer exponents and
/// ExpRational coefficients.
class ExpPoly {
 public:
  using Terms = std::map<long, ExpRational>;  // exponent k -> coefficient

  ExpPoly() = default;
  explicit ExpPoly(std::optional<GProvenance> provenance) : provenance_(std::move(provenance)) {}

  /// Adds coeff * y^k. Throws NegativeExponent when k < 0.
  void add(long k, const ExpRational& coeff);

  const Terms& terms() const { return terms_; }
  const std::optional<GProvenance>& provenance() const { return provenance_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Largest exponent, or -1 for the zero polynomial.
  long degree() const;
  /// Smallest exponent present, or 0 for the zero polynomial.
  long min_exponent() const;
  ExpRational coefficient(long k) const;

  /// Sum of all coefficients, i.e. the exact value at y = 1.
  ExpRational value_at_one() const;
  /// Coefficient of y^0, i.e. the exact value at y = 0 (0^0 = 1).
  ExpRational value_at_zero() const { return coefficient(0); }

  /// Coefficient enclosures (k, [c_k]) in increasing k. Each distinct
  /// exponent of e is enclosed once.
  std::vector<std::pair<long, Interval>> enclose_coefficients(Precision prec) const;

  /// Sparse Horner evaluation over an interval of y values in [0, 1].
  Interval evaluate(const Interval& y, Precision prec) const;
  /// Point value rounded to double (computed at 128 bits).
  double evaluate(double y) const;

 private:
  Terms terms_;
  std::optional<GProvenance> provenance_;
};

/// g(y) = e^{-p*} sum_u y^{(d-1)[(u+2)a-b]} s_{d,u}(Phi_d, y^{b-2a}), so that
/// g(y) = f(-c log y). Throws NegativeExponent if any assembled exponent is
/// negative. The lower boundary p = 1/(d+1) yields a zero exponent and is
/// accepted.
ExpPoly build_g(const DriftParams& params);

/// Formal derivative in y.
ExpPoly g_derivative(const ExpPoly& g);

/// Numeric evaluator of f(lambda) = e^{-p*} sum_u e^{(1 - p_hat(1+u)) lambda} P(U = u).
/// The pmf recursion runs in interval arithmetic at 128 + 2d bits so the
/// result stays accurate for large d.
class FEvaluator {
 public:
  explicit FEvaluator(const DriftParams& params);

  const DriftParams& params() const { return params_; }
  Interval enclose(const Rational& lambda) const;
  double operator()(double lambda) const;
  /// lim f(lambda) as lambda -> infinity, which equals g(0).
  double at_infinity() const { return limit_; }
  /// g(y) = f(-c log y) for y in [0, 1].
  double g(double y) const;

 private:
  DriftParams params_;
  Precision prec_;
  Interval x_;
  Interval prefactor_;
  double limit_ = 0.0;
};

double f_value(const DriftParams& params, double lambda);

}  // namespace frog
