#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "../support.hpp"
#include "ergochain/error.hpp"
#include "ergochain/io.hpp"
#include "ergochain/registry.hpp"

namespace ergochain {
namespace {

using namespace ergochain::testing;

TEST(SpecJson, RoundTripsEveryKind) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 30; ++k) {
    SequenceSpec s(normalize_kind(random_spec(rng).kind()));
    if (k % 3 == 0) s.set_declared_limits(DeclaredLimits{0.5, INFINITY, 2.0, 0.0});
    const auto text = spec_to_json(s).dump();
    EXPECT_EQ(spec_from_json(Json::parse(text)), s) << text;
  }
}

TEST(SpecJson, SchemaAndInfinity) {
  SequenceSpec s = reference_example(3).spec;
  s.set_declared_limits(reference_example(3).known_limits);
  const Json j = spec_to_json(s);
  EXPECT_EQ(j["kind"], "mixed_geometric");
  EXPECT_TRUE(j["params"].contains("c"));
  EXPECT_EQ(j["declared_limits"]["lim_ab"], "inf");
  EXPECT_EQ(j.begin().key(), "kind");
}

TEST(SpecJson, MissingScaleIsSolved) {
  const auto s = spec_from_json(Json::parse(R"({"kind": "geometric"})"));
  EXPECT_NEAR(std::get<Geometric>(s.kind()).c, kGeoC, 1e-14);
  const auto p = spec_from_json(Json::parse(R"({"kind": "power_law", "params": {"d": 2}})"));
  EXPECT_NEAR(std::get<PowerLaw>(p.kind()).c1, kPowerC1, 1e-14);
  const auto m = spec_from_json(Json::parse(R"({"kind": "mixed_geometric", "params": {}})"));
  EXPECT_NEAR(std::get<MixedGeometric>(m.kind()).c, kMixedC, 1e-13);
}

TEST(SpecJson, RejectsMalformedInput) {
  for (const char* text : {R"({"kind": "zeta"})", R"({"params": {}})", R"([1, 2])",
                           R"({"kind": "geometric", "params": {"ratio": 1.5}})",
                           R"({"kind": "power_law", "params": {"d": 0.5}})",
                           R"({"kind": "table", "params": {"a": [1]}})",
                           R"({"kind": "geometric", "params": {"c": "x"}})",
                           R"({"kind": "geometric", "declared_limits": {"A": 1}})",
                           R"({"kind": "geometric", "declared_limits": {"A": -1, "lim_ab": 1, "lim_a_over_bprev": 1, "lim_b_over_a": 1}})"}) {
    try {
      spec_from_json(Json::parse(text));
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidSpec) << text;
    }
  }
  EXPECT_THROW(load_spec("{not json"), Error);
  EXPECT_THROW(load_spec("/nonexistent/spec.json"), Error);
  EXPECT_THROW(load_spec("   "), Error);
}

TEST(SpecJson, LoadsFromFile) {
  const std::string path = ::testing::TempDir() + "geo_spec.json";
  std::ofstream(path) << R"({"kind": "geometric", "params": {"c": 0.5, "ratio": 0.3}})";
  const auto s = load_spec(path);
  EXPECT_EQ(std::get<Geometric>(s.kind()).ratio, 0.3);
  EXPECT_EQ(load_spec(R"(  {"kind": "geometric"})"), spec_from_json(Json::parse(R"({"kind":"geometric"})")));
  std::remove(path.c_str());
}

TEST(ExtendedReal, Encoding) {
  EXPECT_EQ(real_to_json(INFINITY), "inf");
  EXPECT_EQ(real_to_json(-INFINITY), "-inf");
  EXPECT_EQ(real_to_json(0.25), 0.25);
  EXPECT_TRUE(std::isnan(real_from_json("nan")));
  EXPECT_EQ(real_from_json("inf"), INFINITY);
  EXPECT_THROW(real_from_json(Json("big")), Error);
  EXPECT_THROW(real_from_json(Json::array()), Error);
}

TEST(CertificateJson, SchemaAndRoundTrip) {
  const auto fam = BivariateFamily::build(reference_example(2).spec, 100);
  const auto cert = *find_drift_certificate(fam);
  const auto lifted = lift_to_rgs(cert, 0.25);
  const Json j = certificate_to_json(cert, &lifted);
  for (const char* key : {"z", "rho", "L", "x0"}) EXPECT_TRUE(j.contains(key)) << key;
  for (const char* key : {"p", "c", "gamma", "L_rgs"}) EXPECT_TRUE(j["rgs"].contains(key)) << key;
  const Json parsed = Json::parse(j.dump());
  EXPECT_EQ(certificate_from_json(parsed), cert);
  EXPECT_EQ(rgs_certificate_from_json(parsed), lifted);
  EXPECT_DOUBLE_EQ(j["L"].get<double>(), cert.L());
  EXPECT_FALSE(certificate_to_json(cert).contains("rgs"));
}

TEST(VerdictJson, ExactRoundTrip) {
  std::vector<ErgodicityVerdict> all;
  for (int id = 1; id <= 4; ++id) all.push_back(classify(reference_example(id).spec, 200, 0.5, "example"));
  SequenceSpec declared = reference_example(3).spec;
  declared.set_declared_limits(reference_example(3).known_limits);
  all.push_back(classify(declared, 60, 0.3));
  all.push_back(classify(reference_example(1).spec, 40));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) all.push_back(classify(random_spec(rng), 30 + k * 7, 0.7));

  for (const auto& v : all) {
    const std::string text = verdict_to_json(v).dump(2);
    const auto back = verdict_from_json(Json::parse(text));
    EXPECT_EQ(back, v) << text.substr(0, 400);
    EXPECT_EQ(verdict_to_json(back).dump(2), text);
  }
}

TEST(VerdictJson, FieldOrderIsFixed) {
  const auto v = classify(reference_example(2).spec, 100);
  const Json j = verdict_to_json(v);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> expected = {"label", "N", "scan_p", "verdict", "basis", "fired", "quantities",
                                             "limits_converged", "equivalence_applies", "evidence",
                                             "certificate", "subgeo", "note"};
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(verdicts_to_json(std::span(&v, 1)).size(), 1u);
  EXPECT_THROW(verdict_from_json(Json::parse(R"({"label": "x"})")), Error);
}

TEST(SubgeoExport, CsvAndJson) {
  const auto fam = BivariateFamily::build(reference_example(1).spec, 50);
  const auto r = subgeo_report(fam);
  const auto csv = subgeo_to_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "i,mu_i,T_i,log_S1_i,log_S2_i,log_S3_i");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 49);
  EXPECT_EQ(subgeo_from_json(Json::parse(subgeo_to_json(r).dump())), r);
}

TEST(TvExport, CsvRowsAndSummary) {
  const auto fam = BivariateFamily::build(reference_example(2).spec, 40);
  const auto curve = tv_curve(build_px(fam), {1, 0}, 25);
  const auto csv = tv_to_csv(curve);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 26);
  EXPECT_EQ(csv.substr(0, 5), "n,tv\n");
  const Json j = tv_summary_json(curve, 0.05, 40);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"rate", "constant", "gap", "N"}));
  EXPECT_TRUE(tv_summary_json(tv_curve(build_px(fam), {1, 0}, 3), std::nullopt, 40)["rate"].is_null());
}

TEST(TraceExport, Csv) {
  const std::vector<ChainState> states = {{1, 1, 1}, {2, 1, 2}};
  EXPECT_EQ(trace_to_csv(states), "step,x,y\n1,1,1\n2,2,1\n");
}

TEST(BatchMeansExport, Keys) {
  BatchMeansEstimate e;
  e.n = 100;
  e.batch_size = 10;
  e.g_bar = 0.5;
  const Json j = batch_means_to_json(e);
  auto it = j.begin();
  for (const char* key : {"g_bar", "mcse", "batch_size", "n"}) {
    EXPECT_EQ(it.key(), key);
    ++it;
  }
}

}  // namespace
}  // namespace ergochain
