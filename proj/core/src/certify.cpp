#include "frog/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "frog/errors.hpp"

namespace frog {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kCertifiedBelowOne: return "CERTIFIED_BELOW_ONE";
    case Verdict::kFailedExceedsOne: return "FAILED_EXCEEDS_ONE";
    case Verdict::kInconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Verdict verdict_from_string(const std::string& text) {
  if (text == "CERTIFIED_BELOW_ONE") return Verdict::kCertifiedBelowOne;
  if (text == "FAILED_EXCEEDS_ONE") return Verdict::kFailedExceedsOne;
  if (text == "INCONCLUSIVE") return Verdict::kInconclusive;
  throw ParseError("unknown verdict '" + text + "'");
}

std::string to_string(UniqueMax u) {
  switch (u) {
    case UniqueMax::kUnique: return "UNIQUE";
    case UniqueMax::kNotUnique: return "NOT_UNIQUE";
    case UniqueMax::kIndeterminate: return "INDETERMINATE";
  }
  return "INDETERMINATE";
}

void CertifyConfig::validate() const {
  if (initial_precision_bits < 16) throw InvalidArgument("initial precision must be at least 16 bits");
  if (initial_precision_bits > max_precision_bits) {
    throw InvalidArgument("initial precision exceeds the precision cap");
  }
  if (!(min_box_width > 0.0)) throw InvalidArgument("min_box_width must be positive");
  if (!(target_gap > 0.0)) throw InvalidArgument("target_gap must be positive");
  if (max_boxes < 1) throw InvalidArgument("max_boxes must be positive");
}

// ------------------------------------------------------------ PolyEncloser

namespace {

double log_choose(long n, long k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

BigFloat dyadic_mid(const BigFloat& lo, const BigFloat& hi) {
  BigFloat out(std::max(lo.precision(), hi.precision()) + 1);
  mpfr_add(out.raw(), lo.raw(), hi.raw(), MPFR_RNDN);  // exact at one extra bit
  mpfr_div_2ui(out.raw(), out.raw(), 1, MPFR_RNDN);
  return out;
}

}  // namespace

PolyEncloser::PolyEncloser(const ExpPoly& poly, Precision prec, int max_order)
    : prec_(prec), max_order_(std::max(1, max_order)) {
  for (auto& [k, c] : poly.enclose_coefficients(prec)) {
    exps_.push_back(k);
    const double mag = c.magnitude().to_double(MPFR_RNDU);
    log_abs_.push_back(mag > 0.0 ? std::log(mag) : -std::numeric_limits<double>::infinity());
    abs_coeffs_.push_back(Interval(BigFloat(prec), c.magnitude()));
    std::vector<Interval> row;
    const long top = std::min<long>(k, max_order_ - 1);
    for (long j = 0; j <= top; ++j) {
      row.push_back(scale_by_integer(c, binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(j))));
    }
    scaled_.push_back(std::move(row));
    coeffs_.push_back(std::move(c));
  }
}

Interval PolyEncloser::horner(const Interval& y) const {
  if (coeffs_.empty()) return Interval(prec_);
  const Interval yy = y.rounded(std::max(prec_, y.precision()));
  Interval acc = coeffs_.back();
  for (std::size_t idx = coeffs_.size() - 1; idx-- > 0;) {
    acc = acc * pow(yy, static_cast<unsigned long>(exps_[idx + 1] - exps_[idx])) + coeffs_[idx];
  }
  return acc * pow(yy, static_cast<unsigned long>(exps_.front()));
}

Interval PolyEncloser::taylor(const Interval& box, double target_width) const {
  const Precision p = std::max(prec_, box.precision()) + 2;
  const BigFloat m = dyadic_mid(box.lo(), box.hi());
  BigFloat r(p), tmp(p);
  mpfr_sub(r.raw(), box.hi().raw(), m.raw(), MPFR_RNDU);
  mpfr_sub(tmp.raw(), m.raw(), box.lo().raw(), MPFR_RNDU);
  if (r < tmp) r = tmp;
  if (r.is_zero()) return horner(box);
  BigFloat rho(p);
  mpfr_add(rho.raw(), m.raw(), r.raw(), MPFR_RNDU);
  if (m.sign() < 0) mpfr_sub(rho.raw(), r.raw(), m.raw(), MPFR_RNDU);

  // Order selection in floating point; only steers cost, never soundness.
  const double log_r = std::log(r.to_double(MPFR_RNDU));
  const double log_rho = std::log(std::max(rho.to_double(MPFR_RNDU), 1e-300));
  const double goal = std::log(target_width / 16.0);
  int order = max_order_;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= max_order_; ++k) {
    double peak = -std::numeric_limits<double>::infinity();
    std::vector<double> logs;
    for (std::size_t j = 0; j < exps_.size(); ++j) {
      if (exps_[j] < k) continue;
      const double v = log_abs_[j] + log_choose(exps_[j], k) + static_cast<double>(exps_[j] - k) * log_rho +
                       static_cast<double>(k) * log_r;
      logs.push_back(v);
      peak = std::max(peak, v);
    }
    double est = -std::numeric_limits<double>::infinity();
    if (!logs.empty() && std::isfinite(peak)) {
      double acc = 0.0;
      for (const double v : logs) acc += std::exp(v - peak);
      est = peak + std::log(acc);
    }
    if (est < best) {
      best = est;
      order = k;
    }
    if (est <= goal) {
      order = k;
      break;
    }
  }

  // Taylor coefficients T_k = sum_j c_j C(e_j, k) m^{e_j - k}, k < order.
  const Interval mm = Interval::point(m).rounded(p);
  std::vector<Interval> t(static_cast<std::size_t>(order), Interval(p));
  for (std::size_t j = 0; j < exps_.size(); ++j) {
    const long top = std::min<long>(exps_[j], order - 1);
    Interval pw = pow(mm, static_cast<unsigned long>(exps_[j] - top));
    for (long k = top; k >= 0; --k) {
      t[static_cast<std::size_t>(k)] += scaled_[j][static_cast<std::size_t>(k)] * pw;
      if (k > 0) pw *= mm;
    }
  }

  // Lagrange remainder: |c_j C(e_j, K) xi^{e_j-K} s^K| with |xi| <= rho, |s| <= r.
  const Interval rho_iv = Interval::point(rho);
  Interval rem(p);
  for (std::size_t j = 0; j < exps_.size(); ++j) {
    if (exps_[j] < order) continue;
    rem += abs_coeffs_[j] *
           Interval::from_integer(binomial(static_cast<unsigned long>(exps_[j]), static_cast<unsigned long>(order)), p) *
           pow(rho_iv, static_cast<unsigned long>(exps_[j] - order));
  }
  rem *= pow(Interval::point(r), static_cast<unsigned long>(order));

  auto range_on = [&](const Interval& s) {
    Interval acc = t.back();
    for (std::size_t k = t.size() - 1; k-- > 0;) acc = acc * s + t[k];
    return acc;
  };
  BigFloat neg_r(p);
  mpfr_neg(neg_r.raw(), r.raw(), MPFR_RNDD);
  const Interval left = range_on(Interval(neg_r, BigFloat(p)));
  const Interval right = range_on(Interval(BigFloat(p), r));
  return hull(left, right) + Interval::symmetric(rem.hi());
}

Interval PolyEncloser::enclose(const Interval& box, double target_width) const {
  Interval plain = horner(box);
  if (box.is_point() || plain.width_double() <= target_width / 16.0) return plain;
  Interval model = taylor(box, target_width);
  if (auto both = intersect(plain, model)) return *both;
  return model;
}

Interval eval_interval(const ExpPoly& g, const Interval& y_box, Precision precision_bits) {
  if (y_box.lo().sign() < 0 || compare(y_box.hi(), 1.0) > 0) {
    throw OutOfRange("eval_interval expects a box inside [0, 1]");
  }
  return PolyEncloser(g, precision_bits).enclose(y_box, std::ldexp(1.0, -static_cast<int>(precision_bits / 2)));
}

// ----------------------------------------------------- branch and bound

namespace {

struct Box {
  BigFloat lo;
  BigFloat hi;
  int depth = 0;
  Interval range;
};

struct BoxOrder {
  // std::priority_queue pops the "largest": highest range.hi, then widest, then leftmost.
  bool operator()(const Box& x, const Box& y) const {
    if (x.range.hi() != y.range.hi()) return x.range.hi() < y.range.hi();
    if (x.depth != y.depth) return x.depth > y.depth;
    return y.lo < x.lo;
  }
};

struct Attempt {
  Verdict verdict = Verdict::kInconclusive;
  BigFloat upper;
  BigFloat lower;
  BigFloat argmax;
  std::int64_t boxes = 0;
  bool gap_reached = false;
};

BigFloat box_width(const Box& box) {
  BigFloat w(box.hi.precision());
  mpfr_sub(w.raw(), box.hi.raw(), box.lo.raw(), MPFR_RNDU);
  return w;
}

Attempt branch_and_bound(const ExpPoly& g, const CertifyConfig& cfg, Precision prec) {
  const PolyEncloser enc(g, prec);
  Attempt out;
  out.lower = BigFloat(-std::numeric_limits<double>::infinity(), prec);
  out.argmax = BigFloat(0.0, prec);

  auto sample = [&](const BigFloat& y) {
    const Interval v = enc.at(y);
    if (v.lo() > out.lower) {
      out.lower = v.lo();
      out.argmax = y;
    }
  };

  std::priority_queue<Box, std::vector<Box>, BoxOrder> live;
  const Interval unit(BigFloat(0.0, prec), BigFloat(1.0, prec));
  live.push(Box{unit.lo(), unit.hi(), 0, enc.enclose(unit, cfg.target_gap)});
  out.boxes = 1;
  sample(BigFloat(0.0, prec));
  sample(BigFloat(1.0, prec));
  sample(BigFloat(0.5, prec));

  BigFloat floor_upper(-std::numeric_limits<double>::infinity(), prec);  // unsplittable boxes
  const BigFloat gap(cfg.target_gap, 64);

  while (true) {
    if (compare(out.lower, 1.0) >= 0) {
      out.verdict = Verdict::kFailedExceedsOne;
      out.upper = live.empty() ? out.lower : live.top().range.hi();
      if (out.upper < out.lower) out.upper = out.lower;
      return out;
    }
    while (!live.empty() && live.top().range.hi() < out.lower) live.pop();
    BigFloat upper = floor_upper;
    if (!live.empty() && upper < live.top().range.hi()) upper = live.top().range.hi();
    if (upper < out.lower) upper = out.lower;
    out.upper = upper;

    BigFloat spread(prec);
    mpfr_sub(spread.raw(), upper.raw(), out.lower.raw(), MPFR_RNDU);
    const bool below_one = compare(upper, 1.0) < 0;
    if (below_one && spread <= gap) {
      out.verdict = Verdict::kCertifiedBelowOne;
      out.gap_reached = true;
      break;
    }
    if (live.empty() || out.boxes >= cfg.max_boxes) {
      out.verdict = below_one ? Verdict::kCertifiedBelowOne : Verdict::kInconclusive;
      break;
    }

    Box box = live.top();
    live.pop();
    if (compare(box_width(box), 2.0 * cfg.min_box_width) < 0) {
      if (floor_upper < box.range.hi()) floor_upper = box.range.hi();
      continue;
    }
    const BigFloat mid = dyadic_mid(box.lo, box.hi);
    sample(mid);
    for (int side = 0; side < 2; ++side) {
      Box child{side == 0 ? box.lo : mid, side == 0 ? mid : box.hi, box.depth + 1, Interval(prec)};
      const Interval range = enc.enclose(Interval(child.lo, child.hi), cfg.target_gap);
      auto tight = intersect(range, box.range);
      child.range = tight ? *tight : range;
      ++out.boxes;
      if (!(child.range.hi() < out.lower)) live.push(std::move(child));
    }
  }

  if (out.verdict == Verdict::kCertifiedBelowOne) {
    // Polish the argmax inside the hull of the surviving boxes.
    BigFloat lo(1.0, prec), hi(0.0, prec);
    bool any = false;
    while (!live.empty()) {
      const Box& b = live.top();
      if (!(b.range.hi() < out.lower)) {
        if (b.lo < lo) lo = b.lo;
        if (hi < b.hi) hi = b.hi;
        any = true;
      }
      live.pop();
    }
    if (any) {
      double a = lo.to_double(), c = hi.to_double();
      const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
      auto value = [&](double y) { return enc.at(BigFloat(y, prec)).mid_double(); };
      double x1 = c - phi * (c - a), x2 = a + phi * (c - a);
      double f1 = value(x1), f2 = value(x2);
      for (int it = 0; it < 80 && c - a > 1e-15; ++it) {
        if (f1 < f2) {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + phi * (c - a);
          f2 = value(x2);
        } else {
          c = x2;
          x2 = x1;
          f2 = f1;
          x1 = c - phi * (c - a);
          f1 = value(x1);
        }
      }
      sample(BigFloat(0.5 * (a + c), prec));
      if (out.upper < out.lower) out.upper = out.lower;
    }
  }
  return out;
}

}  // namespace

Certificate certify_sup_below_one(const ExpPoly& g, const CertifyConfig& cfg) {
  cfg.validate();
  Certificate cert;
  if (const auto& prov = g.provenance()) {
    cert.d = prov->d;
    cert.a = prov->a;
    cert.b = prov->b;
  }
  cert.config = cfg;
  std::int64_t total_boxes = 0;
  for (Precision prec = cfg.initial_precision_bits;; prec *= 2) {
    Attempt attempt = branch_and_bound(g, cfg, prec);
    total_boxes += attempt.boxes;
    cert.verdict = attempt.verdict;
    cert.sup_upper_bound = attempt.upper;
    cert.sup_lower_bound = attempt.lower;
    cert.argmax_estimate = attempt.argmax;
    cert.precision_bits = prec;
    cert.gap_reached = attempt.gap_reached;
    cert.boxes_processed = total_boxes;
    if (attempt.verdict != Verdict::kInconclusive || prec * 2 > cfg.max_precision_bits) break;
  }
  if (cfg.check_unique_max && cert.verdict == Verdict::kCertifiedBelowOne) {
    cert.unique_max = verify_unique_max(g, cfg);
    cert.unique_max_verified = cert.unique_max == UniqueMax::kUnique;
  }
  return cert;
}

// --------------------------------------------------------- unique maximum

namespace {

enum class Sign { kNeg = -1, kPos = 1 };

std::optional<Sign> certified_sign(const Interval& v) {
  if (v.certainly_positive()) return Sign::kPos;
  if (v.certainly_negative()) return Sign::kNeg;
  return std::nullopt;
}

// Sign sequence of h over [0, 1], left to right; nullopt when some region
// stays unresolved at the minimum box width or the budget runs out.
std::optional<std::vector<Sign>> sign_pattern(const PolyEncloser& h, const PolyEncloser& dh,
                                              const CertifyConfig& cfg, Precision prec) {
  std::vector<Sign> signs;
  auto push = [&](Sign s) {
    if (signs.empty() || signs.back() != s) signs.push_back(s);
  };
  std::vector<std::pair<BigFloat, BigFloat>> stack;
  stack.emplace_back(BigFloat(0.0, prec), BigFloat(1.0, prec));
  std::int64_t boxes = 0;
  const double tight = 1e-20;
  while (!stack.empty()) {
    auto [lo, hi] = std::move(stack.back());
    stack.pop_back();
    if (++boxes > cfg.max_boxes) return std::nullopt;
    const Interval box(lo, hi);
    if (auto s = certified_sign(h.enclose(box, tight))) {
      push(*s);
      continue;
    }
    if (certified_sign(dh.enclose(box, tight))) {
      const auto left = certified_sign(h.at(lo));
      const auto right = certified_sign(h.at(hi));
      if (left && right) {
        // Strictly monotone on the box: at most one root, present iff the
        // endpoint signs differ.
        push(*left);
        push(*right);
        continue;
      }
    }
    BigFloat w(prec);
    mpfr_sub(w.raw(), hi.raw(), lo.raw(), MPFR_RNDU);
    if (compare(w, 2.0 * cfg.min_box_width) < 0) return std::nullopt;
    const BigFloat mid = dyadic_mid(lo, hi);
    stack.emplace_back(mid, hi);
    stack.emplace_back(lo, mid);
  }
  return signs;
}

}  // namespace

UniqueMax verify_unique_max(const ExpPoly& g, const CertifyConfig& cfg) {
  cfg.validate();
  const ExpPoly dg = g_derivative(g);
  if (dg.is_zero()) return UniqueMax::kNotUnique;
  // g' = y^m h(y) with h(0) != 0; on (0, 1] the sign of g' is the sign of h.
  const long shift = dg.min_exponent();
  ExpPoly h(dg.provenance());
  for (const auto& [k, c] : dg.terms()) h.add(k - shift, c);
  const ExpPoly dh = g_derivative(h);
  for (Precision prec = cfg.initial_precision_bits; prec <= cfg.max_precision_bits; prec *= 2) {
    const PolyEncloser h_enc(h, prec);
    const PolyEncloser dh_enc(dh, prec);
    const auto signs = sign_pattern(h_enc, dh_enc, cfg, prec);
    if (!signs) continue;
    const bool unique = signs->size() == 2 && (*signs)[0] == Sign::kPos && (*signs)[1] == Sign::kNeg;
    return unique ? UniqueMax::kUnique : UniqueMax::kNotUnique;
  }
  return UniqueMax::kIndeterminate;
}

// ----------------------------------------------------------- re-checking

bool recheck_certificate(const Certificate& cert) {
  const DriftParams params = derive_params(cert.d, Rational(cert.a, cert.b));
  const ExpPoly g = build_g(params);
  CertifyConfig cfg = cert.config;
  cfg.check_unique_max = false;
  const Certificate again = certify_sup_below_one(g, cfg);
  if (again.verdict != cert.verdict || again.boxes_processed != cert.boxes_processed ||
      !(again.sup_upper_bound == cert.sup_upper_bound) || !(again.sup_lower_bound == cert.sup_lower_bound)) {
    return false;
  }
  if (cert.verdict != Verdict::kCertifiedBelowOne) return true;
  if (compare(cert.sup_upper_bound, 1.0) >= 0) return false;
  const PolyEncloser fine(g, 4 * cert.precision_bits);
  return fine.at(cert.argmax_estimate).hi() <= cert.sup_upper_bound;
}

}  // namespace frog
