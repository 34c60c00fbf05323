#include "frogcli/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "frog/certify.hpp"
#include "frog/errors.hpp"
#include "frog/genfun.hpp"
#include "frog/params.hpp"
#include "frog/search.hpp"
#include "frog/serialize.hpp"
#include "frog/sim.hpp"
#include "frog/u_dist.hpp"

namespace frogcli {

namespace {

using frog::Json;

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// Options every subcommand accepts.
struct Common {
  bool json = false;
  std::string manifest;
  int threads = 1;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_flag("--json", c.json, "Machine-readable JSON output");
  sub->add_option("--manifest", c.manifest, "Write a run manifest to this path");
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
}

struct CertifyFlags {
  frog::Precision initial_precision = frog::kDefaultPrecision;
  frog::Precision max_precision = 4096;
  double min_box_width = 0x1p-60;
  double target_gap = 1e-6;
  std::int64_t max_boxes = 200000;
  bool unique_max = false;
};

void add_certify_flags(CLI::App* sub, CertifyFlags& f) {
  sub->add_option("--initial-precision", f.initial_precision, "Starting precision in bits")->capture_default_str();
  sub->add_option("--max-precision", f.max_precision, "Precision cap in bits")->capture_default_str();
  sub->add_option("--min-box-width", f.min_box_width, "Smallest box width")->capture_default_str();
  sub->add_option("--target-gap", f.target_gap, "Bracket tolerance on the sup")->capture_default_str();
  sub->add_option("--max-boxes", f.max_boxes, "Box budget per precision level")->capture_default_str();
  sub->add_flag("--unique-max", f.unique_max, "Also verify that g has a unique interior maximum");
}

frog::CertifyConfig to_config(const CertifyFlags& f) {
  frog::CertifyConfig cfg;
  cfg.initial_precision_bits = f.initial_precision;
  cfg.max_precision_bits = f.max_precision;
  cfg.min_box_width = f.min_box_width;
  cfg.target_gap = f.target_gap;
  cfg.max_boxes = f.max_boxes;
  cfg.check_unique_max = f.unique_max;
  cfg.validate();
  return cfg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw frog::InvalidArgument("cannot open '" + path + "' for writing");
  os << content;
  if (!os) throw frog::InvalidArgument("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw frog::InvalidArgument("cannot open '" + path + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void print_certificate(std::ostream& out, const frog::Certificate& c) {
  out << "verdict: " << frog::to_string(c.verdict) << '\n'
      << "sup_upper_bound: " << c.sup_upper_bound.to_string(12, MPFR_RNDU) << '\n'
      << "sup_lower_bound: " << c.sup_lower_bound.to_string(12, MPFR_RNDD) << '\n'
      << "argmax_estimate: " << c.argmax_estimate.to_string(12) << '\n'
      << "precision_bits: " << c.precision_bits << '\n'
      << "boxes_processed: " << c.boxes_processed << '\n';
  if (c.config.check_unique_max) out << "unique_max: " << frog::to_string(c.unique_max) << '\n';
}

int verdict_exit(frog::Verdict v) { return v == frog::Verdict::kInconclusive ? kExitInconclusive : kExitOk; }

/// Subcommand state: parsed options plus the action to run.
struct Command {
  Common common;
  std::map<std::string, std::string> recorded;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  std::function<int(Command&, std::ostream&)> action;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified computations for the frog model on d-ary trees", "frogcert"};
  app.require_subcommand(1);
  app.set_version_flag("--version", frog::version());

  std::map<std::string, std::unique_ptr<Command>> commands;
  auto make = [&](const std::string& name, const std::string& help) {
    auto cmd = std::make_unique<Command>();
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, cmd->common);
    Command* raw = cmd.get();
    commands.emplace(name, std::move(cmd));
    return std::pair<CLI::App*, Command*>{sub, raw};
  };

  // ------------------------------------------------------------------ pmf
  int pmf_d = 0;
  std::string pmf_p;
  double pmf_lambda = 0.0;
  bool pmf_intervals = false;
  {
    auto [sub, cmd] = make("pmf", "Distribution of the activation count U(d, p, lambda)");
    sub->add_option("--d", pmf_d, "Tree arity")->required();
    sub->add_option("--p", pmf_p, "Drift as a/b")->required();
    sub->add_option("--lambda", pmf_lambda, "Poisson intensity lambda >= 0")->required();
    sub->add_flag("--intervals", pmf_intervals, "Include certified enclosures");
    cmd->action = [&](Command& c, std::ostream& o) {
      const auto params = frog::derive_params(pmf_d, frog::Rational::parse(pmf_p));
      const frog::UPmf pmf = frog::u_pmf(params, pmf_lambda);
      Json j = frog::to_json(pmf);
      if (pmf_intervals) {
        Json iv = Json::array();
        for (const auto& x : frog::u_pmf_intervals(params, frog::Rational::from_double(pmf_lambda), 128)) {
          iv.push_back(Json::array({x.lo().to_string(25, MPFR_RNDD), x.hi().to_string(25, MPFR_RNDU)}));
        }
        j["intervals"] = iv;
      }
      if (c.common.json) {
        o << j.dump(2) << '\n';
      } else {
        for (std::size_t u = 0; u < pmf.probs.size(); ++u) {
          o << "P(U=" << u << ") = " << std::setprecision(15) << pmf.probs[u] << '\n';
        }
      }
      return kExitOk;
    };
  }

  // ---------------------------------------------------------------- gpoly
  int g_d = 0;
  std::string g_p;
  {
    auto [sub, cmd] = make("gpoly", "Exact coefficients of g(y)");
    sub->add_option("--d", g_d, "Tree arity")->required();
    sub->add_option("--p", g_p, "Drift as a/b")->required();
    cmd->action = [&](Command& c, std::ostream& o) {
      const auto params = frog::derive_params(g_d, frog::Rational::parse(g_p));
      const frog::ExpPoly g = frog::build_g(params);
      if (c.common.json) {
        o << frog::to_json(g).dump(2) << '\n';
      } else {
        o << "terms: " << g.size() << "\ndegree: " << g.degree() << "\nc: " << params.c << '\n';
        for (const auto& [k, coeff] : g.terms()) o << "y^" << k << ": " << coeff.to_string() << '\n';
      }
      return kExitOk;
    };
  }

  // -------------------------------------------------------------- certify
  int c_d = 0;
  std::string c_p, c_emit, c_check;
  CertifyFlags c_flags;
  {
    auto [sub, cmd] = make("certify", "Certify sup g < 1 by interval branch-and-bound");
    sub->add_option("--d", c_d, "Tree arity");
    sub->add_option("--p", c_p, "Drift as a/b");
    sub->add_option("--emit-cert", c_emit, "Write the certificate JSON here");
    sub->add_option("--check", c_check, "Re-verify an existing certificate file instead");
    add_certify_flags(sub, c_flags);
    cmd->action = [&](Command& c, std::ostream& o) {
      if (!c_check.empty()) {
        const frog::Certificate cert = frog::certificate_from_json(Json::parse(read_file(c_check)));
        const bool ok = frog::recheck_certificate(cert);
        if (c.common.json) {
          o << Json{{"certificate", c_check}, {"reproduced", ok}, {"verdict", frog::to_string(cert.verdict)}}.dump(2)
            << '\n';
        } else {
          o << (ok ? "reproduced: " : "NOT reproduced: ") << c_check << '\n';
        }
        return ok ? verdict_exit(cert.verdict) : kExitDomainError;
      }
      if (c_d == 0 || c_p.empty()) throw frog::InvalidArgument("certify needs --d and --p (or --check FILE)");
      const auto params = frog::derive_params(c_d, frog::Rational::parse(c_p));
      const frog::Certificate cert = frog::certify_sup_below_one(frog::build_g(params), to_config(c_flags));
      Json j = frog::to_json(cert);
      if (!c.common.manifest.empty()) j["manifest"] = c.common.manifest;
      if (!c_emit.empty()) {
        write_file(c_emit, j.dump(2) + "\n");
        c.outputs.push_back(c_emit);
      }
      if (c.common.json) {
        o << j.dump(2) << '\n';
      } else {
        print_certificate(o, cert);
        if (!c_emit.empty()) o << "certificate: " << c_emit << '\n';
      }
      return verdict_exit(cert.verdict);
    };
  }

  // ---------------------------------------------------------------- bound
  int b_d = 0;
  double b_window = 0.9994;
  long b_max_den = 1000000;
  std::string b_emit;
  CertifyFlags b_flags;
  {
    auto [sub, cmd] = make("bound", "Search the smallest certifiable rational drift for arity d");
    sub->add_option("--d", b_d, "Tree arity")->required();
    sub->add_option("--window", b_window, "Lower edge of the acceptance window on sup g")->capture_default_str();
    sub->add_option("--max-denominator", b_max_den, "Largest candidate denominator")->capture_default_str();
    sub->add_option("--emit-cert", b_emit, "Certificate path (default bound_d<d>.json)");
    add_certify_flags(sub, b_flags);
    cmd->action = [&](Command& c, std::ostream& o) {
      const frog::BoundResult r = frog::rigorous_bound(b_d, to_config(b_flags), b_window, b_max_den, c.common.threads);
      const std::string path = b_emit.empty() ? "bound_d" + std::to_string(b_d) + ".json" : b_emit;
      Json cj = frog::to_json(r.certificate);
      if (!c.common.manifest.empty()) cj["manifest"] = c.common.manifest;
      write_file(path, cj.dump(2) + "\n");
      c.outputs.push_back(path);
      if (c.common.json) {
        Json j = frog::to_json(r);
        j["certificate_path"] = path;
        o << j.dump(2) << '\n';
      } else {
        o << r.p << "\ncertificate: " << path << '\n';
      }
      return verdict_exit(r.certificate.verdict);
    };
  }

  // --------------------------------------------------------- approx-bound
  int a_d = 0;
  std::string a_start, a_decrement = "0.0001", a_grid_step = "0.01";
  int a_grid_points = 100;
  bool a_strict = false;
  {
    auto [sub, cmd] = make("approx-bound", "Approximate bound by the lambda-grid descent");
    sub->add_option("--d", a_d, "Tree arity")->required();
    sub->add_option("--start", a_start, "Starting drift (a/b or decimal)");
    sub->add_option("--decrement", a_decrement, "Step in p")->capture_default_str();
    sub->add_option("--grid-step", a_grid_step, "Lambda grid spacing")->capture_default_str();
    sub->add_option("--grid-points", a_grid_points, "Lambda grid size")->capture_default_str();
    sub->add_flag("--strict-grid", a_strict, "Never extend the lambda grid");
    cmd->action = [&](Command& c, std::ostream& o) {
      frog::ApproxOptions opts;
      if (!a_start.empty()) opts.start = frog::Rational::parse_numeric(a_start);
      opts.decrement = frog::Rational::parse_numeric(a_decrement);
      opts.grid_step = frog::Rational::parse_numeric(a_grid_step);
      opts.grid_points = a_grid_points;
      opts.strict_grid = a_strict;
      opts.threads = c.common.threads;
      const frog::ApproxResult r = frog::approx_bound(a_d, opts);
      if (c.common.json) {
        o << frog::to_json(r).dump(2) << '\n';
      } else {
        o << std::setprecision(6) << r.value << '\n';
      }
      return kExitOk;
    };
  }

  // ---------------------------------------------------------------- qcrit
  int q_d = 0;
  double q_tol = 1e-4;
  {
    auto [sub, cmd] = make("qcrit", "Bracket the technique threshold q_d by bisection (numeric)");
    sub->add_option("--d", q_d, "Tree arity")->required();
    sub->add_option("--tol", q_tol, "Bracket width")->capture_default_str()->check(CLI::Range(1e-6, 0.5));
    cmd->action = [&](Command& c, std::ostream& o) {
      const frog::QCritResult r = frog::q_crit(q_d, q_tol, c.common.threads);
      if (c.common.json) {
        o << frog::to_json(r).dump(2) << '\n';
      } else {
        o << std::setprecision(10) << "q_" << r.d << " in [" << r.lower << ", " << r.upper << "] (NUMERIC)\n";
      }
      return kExitOk;
    };
  }

  // --------------------------------------------------------------- figure
  int f_dmin = 2, f_dmax = 60;
  std::string f_out;
  bool f_search = false;
  {
    auto [sub, cmd] = make("figure", "Bounds per arity as CSV (m,bound,mode)");
    sub->add_option("--dmin", f_dmin, "Smallest arity")->capture_default_str();
    sub->add_option("--dmax", f_dmax, "Largest arity")->capture_default_str();
    sub->add_option("--out", f_out, "Write the CSV here instead of stdout");
    sub->add_flag("--search", f_search, "Run the rigorous search for m <= 13");
    cmd->action = [&](Command& c, std::ostream& o) {
      frog::FigureOptions opts;
      opts.search = f_search;
      opts.threads = c.common.threads;
      const auto rows = frog::figure_rows(f_dmin, f_dmax, opts);
      const std::string csv = frog::figure_csv(rows);
      if (!f_out.empty()) {
        write_file(f_out, csv);
        c.outputs.push_back(f_out);
      }
      if (c.common.json) {
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(Json{{"m", r.m}, {"bound", r.bound}, {"mode", r.mode}, {"p", r.p.to_string()}});
        o << arr.dump(2) << '\n';
      } else if (f_out.empty()) {
        o << csv;
      } else {
        o << "wrote " << rows.size() << " rows to " << f_out << '\n';
      }
      return kExitOk;
    };
  }

  // ------------------------------------------------------------- simulate
  std::string s_model = "sfm", s_p, s_nu = "one";
  int s_d = 0;
  frog::SimConfig s_cfg;
  {
    auto [sub, cmd] = make("simulate", "Monte Carlo root-visit statistics (finite-depth proxy)");
    sub->add_option("--model", s_model, "fm or sfm")->check(CLI::IsMember({"fm", "sfm"}))->capture_default_str();
    sub->add_option("--d", s_d, "Tree arity")->required();
    sub->add_option("--p", s_p, "Drift (a/b or decimal)")->required();
    sub->add_option("--nu", s_nu, "Initial measure: one or poi:MU")->capture_default_str();
    sub->add_option("--depth", s_cfg.depth, "Truncation depth")->capture_default_str();
    sub->add_option("--reps", s_cfg.replications, "Replications")->capture_default_str();
    sub->add_option("--seed", s_cfg.seed, "Seed")->capture_default_str();
    sub->add_option("--max-steps", s_cfg.max_steps, "Per-frog step cap")->capture_default_str();
    cmd->action = [&](Command& c, std::ostream& o) {
      s_cfg.threads = c.common.threads;
      c.seed = s_cfg.seed;
      const double p = frog::Rational::parse_numeric(s_p).to_double();
      const frog::InitMeasure nu = frog::InitMeasure::parse(s_nu);
      const frog::SimSummary s =
          s_model == "fm" ? frog::simulate_fm(s_d, p, nu, s_cfg) : frog::simulate_sfm(s_d, p, nu, s_cfg);
      if (c.common.json) {
        o << frog::to_json(s).dump(2) << '\n';
      } else {
        o << std::setprecision(8) << s.model << " d=" << s.d << " p=" << s.p << " depth=" << s.cfg.depth
          << " reps=" << s.cfg.replications << "\nmean root visits: " << s.mean << "\nvariance: " << s.variance
          << "\nci95: [" << s.ci95_low << ", " << s.ci95_high << "]\ncapped replications: "
          << s.capped_replications.size() << '\n';
      }
      return kExitOk;
    };
  }

  // ------------------------------------------------------------- sample-u
  int u_d = 0;
  std::string u_p;
  double u_lambda = 0.0;
  std::int64_t u_n = 100000;
  std::uint64_t u_seed = 1;
  {
    auto [sub, cmd] = make("sample-u", "Empirical pmf of U from the star-process sampler");
    sub->add_option("--d", u_d, "Tree arity")->required();
    sub->add_option("--p", u_p, "Drift as a/b")->required();
    sub->add_option("--lambda", u_lambda, "Poisson intensity")->required();
    sub->add_option("--n", u_n, "Samples")->capture_default_str();
    sub->add_option("--seed", u_seed, "Seed")->capture_default_str();
    cmd->action = [&](Command& c, std::ostream& o) {
      c.seed = u_seed;
      const auto params = frog::derive_params(u_d, frog::Rational::parse(u_p));
      const auto pmf = frog::empirical_u_pmf(params, u_lambda, u_n, u_seed, c.common.threads);
      const double tv = frog::tv_distance(pmf, frog::u_pmf(params, u_lambda).probs);
      if (c.common.json) {
        o << Json{{"d", u_d}, {"p", params.p.to_string()}, {"lambda", u_lambda}, {"n", u_n},
                  {"seed", u_seed}, {"probs", pmf}, {"tv_to_exact", tv}}
                 .dump(2)
          << '\n';
      } else {
        for (std::size_t u = 0; u < pmf.size(); ++u) o << "P(U=" << u << ") ~ " << pmf[u] << '\n';
        o << "TV to exact pmf: " << tv << '\n';
      }
      return kExitOk;
    };
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << frog::version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitDomainError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Command& cmd = *commands.at(chosen->get_name());
  for (const CLI::Option* opt : chosen->get_options()) {
    if (opt->count() > 0 && !opt->get_name().empty() && opt->get_name() != "--help") {
      const auto& res = opt->results();
      std::string joined;
      for (const auto& r : res) joined += (joined.empty() ? "" : ",") + r;
      cmd.recorded[opt->get_name()] = res.empty() ? "true" : joined;
    }
  }

  const std::string started = utc_now();
  int code = kExitOk;
  try {
    code = cmd.action(cmd, out);
  } catch (const frog::Error& e) {
    err << Json{{"error", e.code()}, {"message", e.what()}}.dump() << '\n';
    return kExitDomainError;
  } catch (const nlohmann::json::exception& e) {
    err << Json{{"error", "ParseError"}, {"message", e.what()}}.dump() << '\n';
    return kExitDomainError;
  }

  if (!cmd.common.manifest.empty()) {
    frog::RunManifest m;
    m.command = chosen->get_name();
    m.argv = args;
    m.args = cmd.recorded;
    m.seed = cmd.seed;
    m.started_at = started;
    m.finished_at = utc_now();
    m.outputs = cmd.outputs;
    try {
      write_file(cmd.common.manifest, frog::to_json(m).dump(2) + "\n");
    } catch (const frog::Error& e) {
      err << Json{{"error", e.code()}, {"message", e.what()}}.dump() << '\n';
      return kExitDomainError;
    }
  }
  return code;
}

}  // namespace frogcli
