#include "frog/u_dist.hpp"

#include <mutex>
#include <string>

#include "frog/errors.hpp"

namespace frog {

// --------------------------------------------------------------- BivarPoly

BivarPoly BivarPoly::constant(const Rational& c) { return monomial(0, 0, c); }

BivarPoly BivarPoly::monomial(int i, int j, const Rational& c) {
  if (i < 0 || j < 0) throw NegativeExponent("bivariate monomial with a negative exponent");
  BivarPoly out;
  out.add_term({i, j}, c);
  return out;
}

Rational BivarPoly::coefficient(int i, int j) const {
  const auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

void BivarPoly::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

BivarPoly BivarPoly::times_monomial(int i, int j, const Rational& c) const {
  if (i < 0 || j < 0) throw NegativeExponent("bivariate monomial with a negative exponent");
  BivarPoly out;
  if (c.is_zero()) return out;
  for (const auto& [e, coeff] : terms_) out.terms_.emplace(Exponents{e.first + i, e.second + j}, coeff * c);
  return out;
}

Rational BivarPoly::evaluate(const Rational& x, const Rational& y) const {
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    sum += c * pow(x, static_cast<unsigned>(e.first)) * pow(y, static_cast<unsigned>(e.second));
  }
  return sum;
}

Interval BivarPoly::evaluate(const Interval& x, const Interval& y) const {
  const Precision prec = std::max(x.precision(), y.precision());
  Interval sum(prec);
  for (const auto& [e, c] : terms_) {
    sum += Interval::from_rational(c, prec) * pow(x, static_cast<unsigned long>(e.first)) *
           pow(y, static_cast<unsigned long>(e.second));
  }
  return sum;
}

// ------------------------------------------------------------ s recursion

namespace {

struct DiagonalMemo {
  std::mutex mutex;
  std::vector<std::shared_ptr<const BivarPoly>> table;
};

DiagonalMemo& diagonal_memo() {
  static DiagonalMemo memo;
  return memo;
}

// s_{d,u} for u <= d-2 given the diagonal entry s_{u+1,u}.
BivarPoly off_diagonal(int d, int u, const BivarPoly& diag) {
  const int k = d - 1 - u;
  return diag.times_monomial(k, (u + 1) * k, Rational(binomial(static_cast<unsigned long>(d - 1),
                                                               static_cast<unsigned long>(u))));
}

}  // namespace

std::shared_ptr<const BivarPoly> diagonal_s_poly(int u) {
  if (u < 0) throw IndexError("diagonal index must be nonnegative, got " + std::to_string(u));
  DiagonalMemo& memo = diagonal_memo();
  std::lock_guard lock(memo.mutex);
  while (static_cast<int>(memo.table.size()) <= u) {
    const int next = static_cast<int>(memo.table.size());
    BivarPoly diag = BivarPoly::constant(Rational(1));
    for (int i = 0; i < next; ++i) diag -= off_diagonal(next + 1, i, *memo.table[i]);
    memo.table.push_back(std::make_shared<const BivarPoly>(std::move(diag)));
  }
  return memo.table[static_cast<std::size_t>(u)];
}

BivarPoly s_poly(int d, int u) {
  if (d < 1 || u < 0 || u > d - 1) {
    throw IndexError("s_poly index (d=" + std::to_string(d) + ", u=" + std::to_string(u) +
                     ") outside 0 <= u <= d-1");
  }
  if (u == d - 1) return *diagonal_s_poly(u);
  return off_diagonal(d, u, *diagonal_s_poly(u));
}

std::vector<Interval> s_values(int d, const Interval& x, const Interval& y) {
  if (d < 1) throw IndexError("s_values needs d >= 1");
  const Precision prec = std::max(x.precision(), y.precision());
  const Interval one = Interval::point(BigFloat(1.0, prec));

  // x * y^{i+1}, the per-leaf no-visit factor once i+1 sources are active.
  std::vector<Interval> xy;
  xy.reserve(static_cast<std::size_t>(d));
  Interval ypow = y;
  for (int i = 0; i < d; ++i) {
    xy.push_back(x * ypow);
    ypow *= y;
  }

  // powers[i] holds (x y^{i+1})^{u-i} while processing u.
  std::vector<Interval> powers;
  powers.reserve(static_cast<std::size_t>(d));
  std::vector<Interval> diag;  // s_{u+1,u}(x, y)
  diag.reserve(static_cast<std::size_t>(d));
  diag.push_back(one);
  for (int u = 1; u < d; ++u) {
    for (std::size_t i = 0; i < powers.size(); ++i) powers[i] *= xy[i];
    powers.push_back(xy[static_cast<std::size_t>(u - 1)]);
    Interval r = one;
    for (int i = 0; i < u; ++i) {
      r -= scale_by_integer(powers[static_cast<std::size_t>(i)] * diag[static_cast<std::size_t>(i)],
                            binomial(static_cast<unsigned long>(u), static_cast<unsigned long>(i)));
    }
    diag.push_back(std::move(r));
  }
  // powers[i] now equals (x y^{i+1})^{d-1-i}.

  std::vector<Interval> out;
  out.reserve(static_cast<std::size_t>(d));
  for (int u = 0; u <= d - 2; ++u) {
    out.push_back(scale_by_integer(powers[static_cast<std::size_t>(u)] * diag[static_cast<std::size_t>(u)],
                                   binomial(static_cast<unsigned long>(d - 1), static_cast<unsigned long>(u))));
  }
  out.push_back(diag[static_cast<std::size_t>(d - 1)]);
  return out;
}

// ---------------------------------------------------------------- U pmf

std::vector<Interval> u_pmf_intervals(const DriftParams& params, const Rational& lambda,
                                      Precision prec) {
  if (lambda.sign() < 0) throw OutOfRange("lambda must be nonnegative");
  const Interval x = exp_enclosure(params.phi_exponent, prec);
  const Interval y = exp_enclosure(-params.lambda_rate * lambda, prec);
  return s_values(params.d, x, y);
}

UPmf u_pmf(const DriftParams& params, double lambda) {
  if (!(lambda >= 0.0)) throw OutOfRange("lambda must be nonnegative");
  const Rational exact_lambda = Rational::from_double(lambda);
  for (Precision prec = kDefaultPrecision; prec <= 4096; prec *= 2) {
    const auto intervals = u_pmf_intervals(params, exact_lambda, prec);
    bool tight = true;
    for (const auto& iv : intervals) tight = tight && iv.width_double() < 2e-14;
    if (!tight) continue;
    UPmf out{params.d, params.p, lambda, {}};
    for (const auto& iv : intervals) out.probs.push_back(iv.mid_double());
    return out;
  }
  throw ResourceExhausted("u_pmf did not reach 1e-14 accuracy at 4096 bits");
}

bool u_cdf_dominates(const DriftParams& params_d, const DriftParams& params_d1, double lambda) {
  if (params_d1.d != params_d.d + 1 || params_d1.p != params_d.p) {
    throw ArityMismatch("dominance check needs (d, p) and (d+1, p); got (" +
                        std::to_string(params_d.d) + ", " + params_d.p.to_string() + ") and (" +
                        std::to_string(params_d1.d) + ", " + params_d1.p.to_string() + ")");
  }
  if (!(lambda >= 0.0)) throw OutOfRange("lambda must be nonnegative");
  const Rational exact_lambda = Rational::from_double(lambda);
  const int d = params_d.d;
  for (Precision prec = kDefaultPrecision; prec <= 4096; prec *= 2) {
    const auto small = u_pmf_intervals(params_d, exact_lambda, prec);
    const auto large = u_pmf_intervals(params_d1, exact_lambda, prec);
    Interval cdf_small(prec), cdf_large(prec);
    bool decided = true;
    // CDF_d(d-1) = 1 >= CDF_{d+1}(d-1) holds identically; compare k < d-1.
    for (int k = 0; k + 1 < d; ++k) {
      cdf_small += small[static_cast<std::size_t>(k)];
      cdf_large += large[static_cast<std::size_t>(k)];
      if (cdf_large.hi() <= cdf_small.lo()) continue;
      if (cdf_large.lo() > cdf_small.hi()) return false;
      decided = false;
      break;
    }
    if (decided) return true;
  }
  throw ResourceExhausted("CDF comparison undecided at 4096 bits");
}

}  // namespace frog
