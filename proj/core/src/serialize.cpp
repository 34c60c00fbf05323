#include "frog/serialize.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "frog/errors.hpp"

#ifndef FROGCERT_VERSION
#define FROGCERT_VERSION "0.0.0"
#endif

namespace frog {

std::string version() { return FROGCERT_VERSION; }

std::string exact_string(const BigFloat& x) { return x.to_rational().to_string(); }

BigFloat bigfloat_from_exact(const std::string& text, Precision prec) {
  const Rational q = Rational::parse(text);
  // a dyadic value needs as many bits as its numerator has
  const auto bits = static_cast<Precision>(mpz_sizeinbase(q.num().get_mpz_t(), 2));
  BigFloat out = BigFloat::from_rational(q, std::max(prec, bits), MPFR_RNDN);
  if (out.to_rational() != q) throw ParseError("value " + text + " is not exact at " + std::to_string(prec) + " bits");
  return out;
}

namespace {

// Shortest round-trip decimal for a double.
Json number(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? Json("nan") : Json(x > 0 ? "inf" : "-inf");
  return Json(x);
}

}  // namespace

Json to_json(const UPmf& pmf) {
  Json probs = Json::array();
  for (const double v : pmf.probs) probs.push_back(v);
  return Json{{"d", pmf.d}, {"p", pmf.p.to_string()}, {"lambda", pmf.lambda}, {"probs", probs}};
}

Json to_json(const ExpPoly& g) {
  Json out = Json::array();
  for (const auto& [k, coeff] : g.terms()) {
    Json terms = Json::array();
    for (const auto& [q, c] : coeff.terms()) terms.push_back(Json{{"c", c.to_string()}, {"q", q.to_string()}});
    out.push_back(Json{{"k", k}, {"terms", terms}});
  }
  return out;
}

Json to_json(const CertifyConfig& cfg) {
  return Json{{"initial_precision_bits", cfg.initial_precision_bits},
              {"max_precision_bits", cfg.max_precision_bits},
              {"min_box_width", cfg.min_box_width},
              {"target_gap", cfg.target_gap},
              {"max_boxes", cfg.max_boxes},
              {"check_unique_max", cfg.check_unique_max}};
}

CertifyConfig certify_config_from_json(const Json& j) {
  CertifyConfig cfg;
  cfg.initial_precision_bits = j.at("initial_precision_bits").get<Precision>();
  cfg.max_precision_bits = j.at("max_precision_bits").get<Precision>();
  cfg.min_box_width = j.at("min_box_width").get<double>();
  cfg.target_gap = j.at("target_gap").get<double>();
  cfg.max_boxes = j.at("max_boxes").get<std::int64_t>();
  cfg.check_unique_max = j.value("check_unique_max", false);
  cfg.validate();
  return cfg;
}

Json to_json(const Certificate& cert) {
  return Json{{"d", cert.d},
              {"a", cert.a},
              {"b", cert.b},
              {"p", Rational(cert.a, cert.b).to_string()},
              {"verdict", to_string(cert.verdict)},
              {"sup_upper_bound", cert.sup_upper_bound.to_string(20, MPFR_RNDU)},
              {"sup_lower_bound", cert.sup_lower_bound.to_string(20, MPFR_RNDD)},
              {"argmax_estimate", cert.argmax_estimate.to_string(20, MPFR_RNDN)},
              {"sup_upper_bound_exact", exact_string(cert.sup_upper_bound)},
              {"sup_lower_bound_exact", exact_string(cert.sup_lower_bound)},
              {"argmax_estimate_exact", exact_string(cert.argmax_estimate)},
              {"precision_bits", cert.precision_bits},
              {"boxes_processed", cert.boxes_processed},
              {"gap_reached", cert.gap_reached},
              {"unique_max_verified", cert.unique_max_verified},
              {"unique_max", to_string(cert.unique_max)},
              {"config", to_json(cert.config)}};
}

Certificate certificate_from_json(const Json& j) {
  try {
    Certificate cert;
    cert.d = j.at("d").get<int>();
    cert.a = j.at("a").get<long>();
    cert.b = j.at("b").get<long>();
    cert.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    cert.precision_bits = j.at("precision_bits").get<Precision>();
    cert.sup_upper_bound = bigfloat_from_exact(j.at("sup_upper_bound_exact").get<std::string>(), cert.precision_bits);
    cert.sup_lower_bound = bigfloat_from_exact(j.at("sup_lower_bound_exact").get<std::string>(), cert.precision_bits);
    cert.argmax_estimate = bigfloat_from_exact(j.at("argmax_estimate_exact").get<std::string>(), cert.precision_bits);
    cert.boxes_processed = j.at("boxes_processed").get<std::int64_t>();
    cert.gap_reached = j.at("gap_reached").get<bool>();
    cert.unique_max_verified = j.at("unique_max_verified").get<bool>();
    const std::string u = j.at("unique_max").get<std::string>();
    cert.unique_max = u == "UNIQUE" ? UniqueMax::kUnique : u == "NOT_UNIQUE" ? UniqueMax::kNotUnique : UniqueMax::kIndeterminate;
    cert.config = certify_config_from_json(j.at("config"));
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

Json to_json(const BoundResult& result) {
  Json trace = Json::array();
  for (const auto& t : result.search_trace) {
    trace.push_back(Json{{"p", t.p.to_string()}, {"m_numeric", t.m_numeric}, {"status", t.status}});
  }
  return Json{{"d", result.d},
              {"p", result.p.to_string()},
              {"p_decimal", result.p.to_double()},
              {"certificate", to_json(result.certificate)},
              {"search_trace", trace}};
}

Json to_json(const QCritResult& result) {
  return Json{{"d", result.d},
              {"lower", result.lower},
              {"upper", result.upper},
              {"iterations", result.iterations},
              {"mode", "NUMERIC"}};
}

Json to_json(const ApproxResult& result) {
  return Json{{"d", result.d},
              {"p", result.value},
              {"p_exact", result.p.to_string()},
              {"steps", result.steps},
              {"lambda_reach", result.lambda_reach},
              {"mode", "approx"}};
}

Json to_json(const SimSummary& s) {
  Json visits = Json::array();
  for (const auto v : s.root_visits) visits.push_back(v);
  return Json{{"model", s.model},
              {"d", s.d},
              {"p", s.p},
              {"nu", s.nu.to_string()},
              {"depth", s.cfg.depth},
              {"max_steps", s.cfg.max_steps},
              {"seed", s.cfg.seed},
              {"replications", s.cfg.replications},
              {"mean", number(s.mean)},
              {"variance", number(s.variance)},
              {"ci95", Json::array({number(s.ci95_low), number(s.ci95_high)})},
              {"capped_replications", s.capped_replications},
              {"root_visits", visits},
              {"diagnostic", "finite-depth statistics; a heuristic proxy for recurrence"}};
}

std::string figure_csv(const std::vector<FigureRow>& rows) {
  std::ostringstream os;
  os << "m,bound,mode\n";
  for (const auto& r : rows) os << r.m << ',' << std::setprecision(10) << r.bound << ',' << r.mode << '\n';
  return os.str();
}

Json to_json(const RunManifest& m) {
  Json args = Json::object();
  for (const auto& [k, v] : m.args) args[k] = v;
  return Json{{"command", m.command},
              {"argv", m.argv},
              {"args", args},
              {"seed", m.seed},
              {"versions",
               Json{{"frogcert", version()}, {"gmp", gmp_version}, {"mpfr", mpfr_get_version()},
                    {"compiler", __VERSION__}}},
              {"started_at", m.started_at},
              {"finished_at", m.finished_at},
              {"outputs", m.outputs}};
}

}  // namespace frog
