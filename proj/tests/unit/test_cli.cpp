#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ergochain/cli.hpp"
#include "ergochain/io.hpp"

namespace ergochain {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

TEST(Cli, ExamplesTable) {
  const auto r = run({"examples", "--n", "200"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 5u);
  const char* expected[] = {"Subgeometric", "Geometric", "Subgeometric", "Subgeometric"};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NE(rows[i + 1].find(expected[i]), std::string::npos) << rows[i + 1];
    EXPECT_EQ(rows[i + 1].find("Inconclusive"), std::string::npos);
  }
}

TEST(Cli, ExamplesJsonParses) {
  const auto r = run({"examples", "--format", "json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto j = Json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[1]["verdict"], "Geometric");
  EXPECT_EQ(j[1]["basis"], "Corollary1");
  EXPECT_EQ(verdict_from_json(j[0]).verdict, Verdict::Subgeometric);
}

TEST(Cli, TvCurveCsv) {
  const auto r = run({"tvcurve", "--example", "2", "--n", "100", "--chain", "x", "--start", "1",
                      "--steps", "500", "--format", "csv"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 501u);
  EXPECT_EQ(rows[0], "n,tv");
  double prev = 2.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto comma = rows[i].find(',');
    EXPECT_EQ(std::stoul(rows[i].substr(0, comma)), i);
    const double tv = std::stod(rows[i].substr(comma + 1));
    EXPECT_LE(tv, prev + 1e-15) << "row " << i;
    prev = tv;
  }
}

TEST(Cli, TvCurveJsonSummary) {
  const auto r = run({"tvcurve", "--example", "2", "--n", "100", "--chain", "dgs", "--start", "1,1",
                      "--steps", "800", "--format", "json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_LT(j["rate"].get<double>(), 1.0);
  EXPECT_EQ(j["N"], 100);
}

TEST(Cli, DriftCertificate) {
  const auto ok = run({"drift", "--example", "2"});
  ASSERT_EQ(ok.code, cli::kOk) << ok.err;
  const auto cert = certificate_from_json(Json::parse(ok.out));
  EXPECT_LT(cert.rho, 1.0);
  EXPECT_EQ(run({"drift", "--example", "1"}).code, cli::kInconclusive);
}

TEST(Cli, SpectrumAndSubgeo) {
  const auto s = run({"spectrum", "--example", "2", "--n", "100"});
  ASSERT_EQ(s.code, cli::kOk) << s.err;
  EXPECT_GT(Json::parse(s.out)["gap"].get<double>(), 0.0);
  const auto g = run({"subgeo", "--example", "3", "--n", "50", "--format", "csv"});
  ASSERT_EQ(g.code, cli::kOk) << g.err;
  const auto rows = lines(g.out);
  EXPECT_EQ(rows[0], "i,mu_i,T_i,log_S1_i,log_S2_i,log_S3_i");
  EXPECT_GT(rows.size(), 2u);
}

TEST(Cli, SampleTraceAndBatchMeans) {
  const auto t = run({"sample", "--example", "2", "--n", "30", "--chain", "dgs", "--steps", "100",
                      "--seed", "5", "--thin", "10"});
  ASSERT_EQ(t.code, cli::kOk) << t.err;
  const auto rows = lines(t.out);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows[0], "step,x,y");
  EXPECT_EQ(rows[1].substr(0, 3), "10,");

  const auto j = run({"sample", "--example", "1", "--n", "200", "--chain", "x", "--steps", "10000",
                      "--g", "ge:2", "--format", "json"});
  ASSERT_EQ(j.code, cli::kOk) << j.err;
  const auto est = Json::parse(j.out);
  EXPECT_TRUE(est.contains("warning"));
  EXPECT_TRUE(est.contains("mcse"));
}

TEST(Cli, InconclusiveExitCode) {
  const auto r = run({"classify", "--example", "1", "--n", "50"});
  EXPECT_EQ(r.code, cli::kInconclusive);
  EXPECT_NE(r.out.find("Inconclusive"), std::string::npos);
}

TEST(Cli, InlineSpecAndDeterministicOutput) {
  const std::vector<std::string> args = {
      "classify", "--spec", R"({"kind":"geometric","params":{"c":1.5,"ratio":0.5}})", "--n", "120",
      "--format", "json"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Json::parse(a.out)["verdict"], "Geometric");
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "ergochain_cli_out_test.json";
  std::filesystem::remove(path);
  const auto r = run({"spectrum", "--example", "2", "--n", "50", "--out", path.string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = Json::parse(in);
  EXPECT_TRUE(j.contains("gap"));
  std::filesystem::remove(path);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"classify"}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"examples", "--format", "xml"}).code, cli::kUsage);
  EXPECT_EQ(run({"classify", "--example", "9"}).code, cli::kUsage);
  EXPECT_EQ(run({"classify", "--spec", R"({"kind":"nope"})"}).code, cli::kUsage);
  EXPECT_EQ(run({"sample", "--example", "2", "--chain", "rgs", "--scan-p", "1.5", "--steps", "10"}).code,
            cli::kUsage);
  const auto few = run({"sample", "--example", "2", "--chain", "x", "--steps", "3", "--g", "x", "--format", "json"});
  EXPECT_EQ(few.code, cli::kNumericFailure);
  EXPECT_FALSE(few.err.empty());
}

}  // namespace
}  // namespace ergochain
