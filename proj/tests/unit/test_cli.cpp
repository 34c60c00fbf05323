#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "frog/serialize.hpp"
#include "frogcli/cli.hpp"

namespace fs = std::filesystem;
using frog::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = frogcli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("frogcli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, CertifyEmitsCertificate) {
  const auto r = run({"certify", "--d", "2", "--p", "2/5", "--emit-cert", path("out.json")});
  EXPECT_EQ(r.code, frogcli::kExitOk) << r.err;
  const Json cert = Json::parse(slurp(path("out.json")));
  EXPECT_EQ(cert.at("verdict"), "CERTIFIED_BELOW_ONE");
  EXPECT_EQ(cert.at("p"), "2/5");

  const auto check = run({"certify", "--check", path("out.json"), "--json"});
  EXPECT_EQ(check.code, frogcli::kExitOk) << check.err;
  EXPECT_TRUE(Json::parse(check.out).at("reproduced").get<bool>());
}

TEST_F(CliTest, BoundaryDriftIsDomainError) {
  const auto r = run({"certify", "--d", "2", "--p", "1/3"});
  EXPECT_EQ(r.code, frogcli::kExitDomainError);
  const Json e = Json::parse(r.err);
  EXPECT_EQ(e.at("error"), "OutOfRange");
  EXPECT_TRUE(e.contains("message"));
}

TEST_F(CliTest, RigorousCommandsRejectDecimals) {
  const auto r = run({"certify", "--d", "2", "--p", "0.4"});
  EXPECT_EQ(r.code, frogcli::kExitDomainError);
  EXPECT_EQ(Json::parse(r.err).at("error"), "ParseError");
}

TEST_F(CliTest, TinyBudgetIsInconclusive) {
  const auto r = run({"certify", "--d", "2", "--p", "55/159", "--max-boxes", "1", "--max-precision", "128"});
  EXPECT_EQ(r.code, frogcli::kExitInconclusive) << r.out << r.err;
}

TEST_F(CliTest, UsageErrorPrintsSubcommandHelp) {
  const auto r = run({"pmf", "--d", "2"});
  EXPECT_NE(r.code, frogcli::kExitOk);
  EXPECT_NE(r.err.find("--lambda"), std::string::npos);
  const auto none = run({});
  EXPECT_NE(none.code, frogcli::kExitOk);
  const auto bogus = run({"frobnicate"});
  EXPECT_NE(bogus.code, frogcli::kExitOk);
}

TEST_F(CliTest, PmfJsonAndManifest) {
  const auto r = run({"pmf", "--d", "2", "--p", "2/5", "--lambda", "1", "--json", "--manifest", path("m.json")});
  ASSERT_EQ(r.code, frogcli::kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("p"), "2/5");
  EXPECT_NEAR(j.at("probs")[0].get<double>(), 0.55804, 1e-5);
  const Json m = Json::parse(slurp(path("m.json")));
  EXPECT_EQ(m.at("command"), "pmf");
  EXPECT_EQ(m.at("args").at("--lambda"), "1");
  EXPECT_TRUE(m.at("versions").contains("mpfr"));
  EXPECT_FALSE(m.at("started_at").get<std::string>().empty());
}

TEST_F(CliTest, GpolyJson) {
  const auto r = run({"gpoly", "--d", "2", "--p", "2/5", "--json"});
  ASSERT_EQ(r.code, frogcli::kExitOk);
  EXPECT_EQ(Json::parse(r.out).size(), 3u);
}

TEST_F(CliTest, BoundPrintsTableValueAndPath) {
  const auto r = run({"bound", "--d", "2", "--emit-cert", path("b.json")});
  ASSERT_EQ(r.code, frogcli::kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "55/159");
  EXPECT_NE(r.out.find("certificate: " + path("b.json")), std::string::npos);
  EXPECT_EQ(Json::parse(slurp(path("b.json"))).at("verdict"), "CERTIFIED_BELOW_ONE");
}

TEST_F(CliTest, QcritAcceptsDecimalTolerance) {
  const auto r = run({"qcrit", "--d", "2", "--tol", "0.01", "--json"});
  ASSERT_EQ(r.code, frogcli::kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("mode"), "NUMERIC");
  EXPECT_GT(j.at("lower").get<double>(), 1.0 / 3.0);
}

TEST_F(CliTest, FigureWritesCsv) {
  const auto r = run({"figure", "--dmin", "12", "--dmax", "14", "--out", path("fig.csv"), "--manifest", path("fm.json")});
  ASSERT_EQ(r.code, frogcli::kExitOk) << r.err;
  const std::string csv = slurp(path("fig.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "m,bound,mode");
  EXPECT_NE(csv.find("14,"), std::string::npos);
  EXPECT_EQ(Json::parse(slurp(path("fm.json"))).at("outputs")[0], path("fig.csv"));
}

TEST_F(CliTest, SimulateIsReproducible) {
  const std::vector<std::string> args = {"simulate", "--model", "sfm", "--d", "2", "--p", "0.3", "--depth", "6",
                                         "--reps", "20", "--seed", "5", "--json"};
  const auto a = run(args);
  ASSERT_EQ(a.code, frogcli::kExitOk) << a.err;
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "2"});
  const auto b = run(threaded);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Json::parse(a.out).at("replications"), 20);
  const auto bad = run({"simulate", "--model", "xyz", "--d", "2", "--p", "0.3"});
  EXPECT_NE(bad.code, frogcli::kExitOk);
}

TEST_F(CliTest, SampleU) {
  const auto r = run({"sample-u", "--d", "3", "--p", "3/10", "--lambda", "1", "--n", "20000", "--json"});
  ASSERT_EQ(r.code, frogcli::kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("probs").size(), 3u);
  EXPECT_LT(j.at("tv_to_exact").get<double>(), 0.02);
}
