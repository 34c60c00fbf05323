#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "frog/certify.hpp"
#include "frog/genfun.hpp"
#include "frog/search.hpp"
#include "frog/sim.hpp"
#include "frog/u_dist.hpp"

namespace frog {

using Json = nlohmann::ordered_json;

/// Library version string.
std::string version();

/// Exact value of a binary float as "n/d" (d a power of two).
std::string exact_string(const BigFloat& x);
/// Inverse of exact_string; throws ParseError if the value needs more than
/// `prec` bits.
BigFloat bigfloat_from_exact(const std::string& text, Precision prec);

Json to_json(const UPmf& pmf);
Json to_json(const ExpPoly& g);
Json to_json(const CertifyConfig& cfg);
Json to_json(const Certificate& cert);
Json to_json(const BoundResult& result);
Json to_json(const QCritResult& result);
Json to_json(const ApproxResult& result);
Json to_json(const SimSummary& summary);

CertifyConfig certify_config_from_json(const Json& j);
Certificate certificate_from_json(const Json& j);

/// CSV with header m,bound,mode.
std::string figure_csv(const std::vector<FigureRow>& rows);

/// Record of one CLI invocation.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::map<std::string, std::string> args;
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;
};

Json to_json(const RunManifest& m);

}  // namespace frog
