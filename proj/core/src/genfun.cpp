#include "frog/genfun.hpp"

#include <cmath>
#include <sstream>

#include "frog/errors.hpp"
#include "frog/u_dist.hpp"

namespace frog {

// ------------------------------------------------------------- ExpRational

ExpRational::ExpRational(const Rational& c, const Rational& q) { add_term(q, c); }

void ExpRational::add_term(const Rational& q, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(q, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExpRational& ExpRational::operator+=(const ExpRational& rhs) {
  for (const auto& [q, c] : rhs.terms_) add_term(q, c);
  return *this;
}

ExpRational& ExpRational::operator-=(const ExpRational& rhs) {
  for (const auto& [q, c] : rhs.terms_) add_term(q, -c);
  return *this;
}

ExpRational& ExpRational::operator*=(const ExpRational& rhs) {
  ExpRational out;
  for (const auto& [q1, c1] : terms_) {
    for (const auto& [q2, c2] : rhs.terms_) out.add_term(q1 + q2, c1 * c2);
  }
  terms_ = std::move(out.terms_);
  return *this;
}

ExpRational& ExpRational::operator*=(const Rational& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [q, c] : terms_) c *= scalar;
  return *this;
}

ExpRational ExpRational::operator-() const {
  ExpRational out(*this);
  for (auto& [q, c] : out.terms_) c = -c;
  return out;
}

Interval ExpRational::enclose(Precision prec) const {
  Interval sum(prec);
  for (const auto& [q, c] : terms_) sum += Interval::from_rational(c, prec) * exp_enclosure(q, prec);
  return sum;
}

double ExpRational::to_double() const { return enclose(kDefaultPrecision).mid_double(); }

std::string ExpRational::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [q, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    if (!q.is_zero()) os << "*e^(" << q << ")";
  }
  return os.str();
}

// ----------------------------------------------------------------- ExpPoly

void ExpPoly::add(long k, const ExpRational& coeff) {
  if (k < 0) throw NegativeExponent("negative y-exponent " + std::to_string(k));
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

long ExpPoly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

long ExpPoly::min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }

ExpRational ExpPoly::coefficient(long k) const {
  const auto it = terms_.find(k);
  return it == terms_.end() ? ExpRational() : it->second;
}

ExpRational ExpPoly::value_at_one() const {
  ExpRational sum;
  for (const auto& [k, coeff] : terms_) sum += coeff;
  return sum;
}

std::vector<std::pair<long, Interval>> ExpPoly::enclose_coefficients(Precision prec) const {
  std::map<Rational, Interval> exp_cache;
  std::vector<std::pair<long, Interval>> out;
  out.reserve(terms_.size());
  for (const auto& [k, coeff] : terms_) {
    Interval sum(prec);
    for (const auto& [q, c] : coeff.terms()) {
      auto it = exp_cache.find(q);
      if (it == exp_cache.end()) it = exp_cache.emplace(q, exp_enclosure(q, prec)).first;
      sum += Interval::from_rational(c, prec) * it->second;
    }
    out.emplace_back(k, std::move(sum));
  }
  return out;
}

Interval ExpPoly::evaluate(const Interval& y, Precision prec) const {
  if (terms_.empty()) return Interval(prec);
  const auto coeffs = enclose_coefficients(prec);
  const Interval yy = y.rounded(std::max(prec, y.precision()));
  Interval acc = coeffs.back().second;
  for (std::size_t idx = coeffs.size() - 1; idx-- > 0;) {
    const long gap = coeffs[idx + 1].first - coeffs[idx].first;
    acc = acc * pow(yy, static_cast<unsigned long>(gap)) + coeffs[idx].second;
  }
  return acc * pow(yy, static_cast<unsigned long>(coeffs.front().first));
}

double ExpPoly::evaluate(double y) const {
  return evaluate(Interval::point(y, kDefaultPrecision), kDefaultPrecision).mid_double();
}

// ----------------------------------------------------------------- build_g

ExpPoly build_g(const DriftParams& params) {
  const int d = params.d;
  const long a = params.a();
  const long b = params.b();
  ExpPoly g(GProvenance{d, a, b, params.c});
  const long dm1 = d - 1;
  const long inner = b - 2 * a;  // y-exponent substituted for each power of y in s_{d,u}
  for (int u = 0; u < d; ++u) {
    const long outer = dm1 * ((u + 2) * a - b);
    const BivarPoly s = s_poly(d, u);
    for (const auto& [e, coeff] : s.terms()) {
      const long k = outer + static_cast<long>(e.second) * inner;
      if (k < 0) {
        throw NegativeExponent("assembled exponent " + std::to_string(k) + " at u = " +
                               std::to_string(u) + " for d = " + std::to_string(d) +
                               ", p = " + params.p.to_string());
      }
      g.add(k, ExpRational(coeff, Rational(e.first) * params.phi_exponent - params.p_star));
    }
  }
  return g;
}

ExpPoly g_derivative(const ExpPoly& g) {
  ExpPoly out(g.provenance());
  for (const auto& [k, coeff] : g.terms()) {
    if (k == 0) continue;
    out.add(k - 1, coeff * Rational(k));
  }
  return out;
}

// ------------------------------------------------------------- FEvaluator

FEvaluator::FEvaluator(const DriftParams& params)
    : params_(params),
      prec_(kDefaultPrecision + 2 * static_cast<Precision>(params.d)),
      x_(exp_enclosure(params.phi_exponent, prec_)),
      prefactor_(exp_enclosure(-params.p_star, prec_)) {
  // As lambda grows only terms whose net exponent in lambda vanishes survive,
  // and every diagonal factor tends to 1. The u = 0 term always survives; the
  // u = d-1 term survives exactly at p = 1/(d+1).
  const int d = params.d;
  Interval sum(prec_);
  for (int u = 0; u < d; ++u) {
    Rational rate = Rational(1) - params.p_hat * Rational(1 + u);
    if (u < d - 1) rate -= params.lambda_rate * Rational((u + 1) * (d - 1 - u));
    if (!rate.is_zero()) continue;
    const unsigned long n = static_cast<unsigned long>(d - 1);
    const unsigned long uu = static_cast<unsigned long>(u);
    sum += u < d - 1 ? scale_by_integer(pow(x_, n - uu), binomial(n, uu))
                     : Interval::point(BigFloat(1.0, prec_));
  }
  limit_ = (prefactor_ * sum).mid_double();
}

Interval FEvaluator::enclose(const Rational& lambda) const {
  if (lambda.sign() < 0) throw OutOfRange("lambda must be nonnegative");
  const Interval y = exp_enclosure(-params_.lambda_rate * lambda, prec_);
  const auto pmf = s_values(params_.d, x_, y);
  const Interval grow = exp_enclosure((Rational(1) - params_.p_hat) * lambda, prec_);
  const Interval shrink = exp_enclosure(-params_.p_hat * lambda, prec_);
  Interval sum(prec_);
  Interval weight = grow;
  for (const auto& prob : pmf) {
    sum += weight * prob;
    weight *= shrink;
  }
  return prefactor_ * sum;
}

double FEvaluator::operator()(double lambda) const {
  if (!(lambda >= 0.0)) throw OutOfRange("lambda must be nonnegative");
  if (std::isinf(lambda)) return limit_;
  return enclose(Rational::from_double(lambda)).mid_double();
}

double FEvaluator::g(double y) const {
  if (!(y >= 0.0 && y <= 1.0)) throw OutOfRange("g is defined for y in [0, 1]");
  if (y == 0.0) return limit_;
  return (*this)(-params_.c.to_double() * std::log(y));
}

double f_value(const DriftParams& params, double lambda) { return FEvaluator(params)(lambda); }

}  // namespace frog
