#include "frog/search.hpp"

#include <cmath>
#include <limits>

#include "frog/errors.hpp"
#include "frog/genfun.hpp"
#include "frog/parallel.hpp"

namespace frog {

// ------------------------------------------------------------------ M value

namespace {

constexpr int kGridSteps = 1000;

double f_at_s(const FEvaluator& f, double s) {
  if (s >= 1.0) return f.at_infinity();
  return f(s / (1.0 - s));
}

}  // namespace

MaxLocation m_value_location(const DriftParams& params, int threads) {
  const FEvaluator f(params);
  std::vector<double> values(kGridSteps + 1);
  parallel_for(values.size(), threads, [&](std::size_t k) {
    values[k] = f_at_s(f, static_cast<double>(k) / kGridSteps);
  });
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[best]) best = k;
  }

  const double h = 1.0 / kGridSteps;
  double a = std::max(0.0, static_cast<double>(best) * h - h);
  double c = std::min(1.0 - 1e-12, static_cast<double>(best) * h + h);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = c - ratio * (c - a), x2 = a + ratio * (c - a);
  double f1 = f_at_s(f, x1), f2 = f_at_s(f, x2);
  while (c - a > 1e-12) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (c - a);
      f2 = f_at_s(f, x2);
    } else {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - ratio * (c - a);
      f1 = f_at_s(f, x1);
    }
  }
  const double s_star = 0.5 * (a + c);
  const double refined = f_at_s(f, s_star);

  MaxLocation out;
  if (refined >= values[best]) {
    out.value = refined;
    out.lambda = s_star / (1.0 - s_star);
  } else {
    out.value = values[best];
    const double s = static_cast<double>(best) * h;
    out.lambda = s >= 1.0 ? std::numeric_limits<double>::infinity() : s / (1.0 - s);
  }
  return out;
}

double m_value(const DriftParams& params, int threads) { return m_value_location(params, threads).value; }

// ------------------------------------------------------ rational candidates

std::vector<Rational> rational_candidates(double target, long max_denominator) {
  if (!(target > 0.0 && target < 1.0)) throw OutOfRange("candidate target must lie in (0, 1)");
  if (max_denominator < 1) throw InvalidArgument("max_denominator must be positive");
  const Rational t = Rational::from_double(target);
  std::vector<Rational> out;
  long ln = 0, ld = 1, un = 1, ud = 1;
  while (true) {
    const long mn = ln + un;
    const long md = ld + ud;
    if (md > max_denominator) break;
    const Rational m(mn, md);
    if (m == t) {
      out.push_back(m);
      break;
    }
    if (m > t) {
      out.push_back(m);
      un = mn;
      ud = md;
    } else {
      ln = mn;
      ld = md;
    }
  }
  return out;
}

// ------------------------------------------------------------------- q_d

QCritResult q_crit(int d, double tol, int threads) {
  if (d < 2) throw OutOfRange("q_crit needs d >= 2");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  Rational lo(1, d + 1), hi(1, 2);
  QCritResult out{d, lo.to_double(), hi.to_double(), 0};
  const Rational tolerance = Rational::from_double(tol);
  while (hi - lo > tolerance) {
    const Rational mid = (lo + hi) / Rational(2);
    if (m_value(derive_params(d, mid), threads) < 1.0) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++out.iterations;
  }
  out.lower = lo.to_double();
  out.upper = hi.to_double();
  return out;
}

// ------------------------------------------------------- rigorous search

BoundResult rigorous_bound(int d, const CertifyConfig& cfg, double window, long max_denominator,
                           int threads) {
  if (d < 2) throw OutOfRange("rigorous_bound needs d >= 2");
  if (!(window > 0.0 && window < 1.0)) throw OutOfRange("window must lie in (0, 1)");
  cfg.validate();
  const QCritResult q = q_crit(d, 1e-7, threads);
  BoundResult out;
  out.d = d;
  for (const Rational& p : rational_candidates(q.upper, max_denominator)) {
    if (!drift_in_range(d, p)) continue;
    const DriftParams params = derive_params(d, p);
    TraceEntry entry{p, m_value(params, threads), ""};
    if (entry.m_numeric <= window) {
      entry.status = "BELOW_WINDOW";
      out.search_trace.push_back(entry);
      continue;
    }
    if (entry.m_numeric >= 1.0) {
      entry.status = "NOT_BELOW_ONE";
      out.search_trace.push_back(entry);
      continue;
    }
    Certificate cert = certify_sup_below_one(build_g(params), cfg);
    entry.status = to_string(cert.verdict);
    out.search_trace.push_back(entry);
    if (cert.verdict == Verdict::kCertifiedBelowOne && compare(cert.sup_lower_bound, window) > 0 &&
        compare(cert.sup_upper_bound, 1.0) < 0) {
      out.p = p;
      out.certificate = std::move(cert);
      return out;
    }
  }
  throw SearchExhausted("no candidate drift for d = " + std::to_string(d) +
                        " certified with sup in the window");
}

// ------------------------------------------------------ reference bounds

std::optional<Rational> reference_bound(int d) {
  static const long table[][2] = {{55, 159}, {42, 145}, {40, 153}, {23, 94}, {46, 197}, {23, 102},
                                  {38, 173}, {20, 93},  {15, 71},  {5, 24},  {7, 34},   {11, 54}};
  if (d < 2 || d > 13) return std::nullopt;
  const auto& row = table[d - 2];
  return Rational(row[0], row[1]);
}

// ------------------------------------------------------- approximate mode

namespace {

struct GridCheck {
  bool pass = false;
  double reach = 0.0;
};

GridCheck grid_check(int d, const Rational& p, const ApproxOptions& opts) {
  GridCheck out;
  if (!drift_in_range(d, p)) return out;
  const FEvaluator f(derive_params(d, p));
  const auto lambda_at = [&](long k) { return opts.grid_step * Rational(k); };
  const auto value_at = [&](long k) { return f.enclose(lambda_at(k)).mid_double(); };

  const auto n = static_cast<std::size_t>(opts.grid_points);
  std::vector<double> values(n, 0.0);
  if (opts.threads > 1) {
    parallel_for(n, opts.threads, [&](std::size_t k) { values[k] = value_at(static_cast<long>(k)); });
    for (const double v : values) {
      if (v >= 1.0) return out;
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      values[k] = value_at(static_cast<long>(k));
      if (values[k] >= 1.0) return out;
    }
  }
  long k = opts.grid_points - 1;
  if (!opts.strict_grid && n >= 2) {
    double prev = values[n - 2], last = values[n - 1];
    while (last > prev && lambda_at(k + 1).to_double() <= opts.max_lambda) {
      ++k;
      prev = last;
      last = value_at(k);
      if (last >= 1.0) return out;
    }
  }
  out.pass = true;
  out.reach = lambda_at(k).to_double();
  return out;
}

}  // namespace

ApproxResult approx_bound(int d, const ApproxOptions& opts) {
  if (d < 2) throw OutOfRange("approx_bound needs d >= 2");
  if (opts.grid_points < 1 || opts.decrement.sign() <= 0 || opts.grid_step.sign() <= 0) {
    throw InvalidArgument("approximate grid settings must be positive");
  }
  Rational p;
  if (opts.start) {
    p = *opts.start;
  } else if (d == 2) {
    p = Rational(9, 20);
  } else {
    p = reference_bound(std::min(d - 1, 13)).value();
  }
  const Rational floor(1, d + 1);
  ApproxResult out;
  out.d = d;
  GridCheck check = grid_check(d, p, opts);
  while (!check.pass) {
    p += opts.decrement;
    if (p >= Rational(1, 2)) throw SearchExhausted("no passing drift below 1/2 for d = " + std::to_string(d));
    check = grid_check(d, p, opts);
  }
  while (true) {
    const Rational next = p - opts.decrement;
    if (next <= floor) break;
    const GridCheck next_check = grid_check(d, next, opts);
    if (!next_check.pass) break;
    p = next;
    check = next_check;
    ++out.steps;
  }
  out.p = p;
  out.value = p.to_double();
  out.lambda_reach = check.reach;
  return out;
}

// ----------------------------------------------------------------- figure

std::vector<FigureRow> figure_rows(int dmin, int dmax, const FigureOptions& opts) {
  if (dmin < 2 || dmax < dmin) throw OutOfRange("figure needs 2 <= dmin <= dmax");
  std::vector<FigureRow> rows;
  for (int m = dmin; m <= dmax; ++m) {
    FigureRow row;
    row.m = m;
    if (m <= 13) {
      if (opts.search) {
        row.p = rigorous_bound(m, opts.cfg, 0.9994, 1000000, opts.threads).p;
      } else {
        row.p = *reference_bound(m);
        const Certificate cert = certify_sup_below_one(build_g(derive_params(m, row.p)), opts.cfg);
        if (cert.verdict != Verdict::kCertifiedBelowOne) {
          throw SearchExhausted("reference bound for d = " + std::to_string(m) + " did not certify");
        }
      }
      row.mode = "rigorous";
    } else {
      ApproxOptions approx = opts.approx;
      approx.threads = opts.threads;
      if (!rows.empty() && rows.back().m == m - 1) approx.start = rows.back().p;
      row.p = approx_bound(m, approx).p;
      row.mode = "approx";
    }
    row.bound = row.p.to_double();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace frog
