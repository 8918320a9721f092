#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ergochain/diagnostics.hpp"
#include "ergochain/error.hpp"
#include "ergochain/registry.hpp"
#include "ergochain/samplers.hpp"

namespace ergochain {
namespace {

TEST(BatchMeans, ConstantSequenceHasZeroVariance) {
  const std::vector<double> v(10000, 3.5);
  const auto est = batch_means(v);
  EXPECT_EQ(est.sigma2_hat, 0.0);
  EXPECT_EQ(est.mcse, 0.0);
  EXPECT_EQ(est.g_bar, 3.5);
  EXPECT_EQ(est.batch_size, 100u);
  EXPECT_EQ(est.num_batches, 100u);
}

TEST(BatchMeans, IidUniformVariance) {
  UniformStream rng(2718);
  std::vector<double> v(1000000);
  for (double& x : v) x = rng();
  const auto est = batch_means(v);
  EXPECT_NEAR(est.sigma2_hat / (1.0 / 12.0), 1.0, 0.10);
  EXPECT_NEAR(est.mcse, std::sqrt(est.sigma2_hat / 1e6), 1e-15);
}

TEST(BatchMeans, HandComputedExample) {
  // batches of 2: means 1.5, 3.5, 5.5, 7.5; sample variance 20/3; times 2
  const std::vector<double> v = {1, 2, 3, 4, 5, 6, 7, 8, 100};
  const auto est = batch_means(v, 2);
  EXPECT_EQ(est.num_batches, 4u);
  EXPECT_NEAR(est.sigma2_hat, 40.0 / 3.0, 1e-12);
  EXPECT_NEAR(est.g_bar, 136.0 / 9.0, 1e-12);
  EXPECT_LE(est.batch_size * est.num_batches, est.n);
}

TEST(BatchMeans, ScaleAndShift) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  std::vector<double> v(40000);
  for (double& x : v) x = nd(rng);
  const auto base = batch_means(v);
  auto scaled = v, shifted = v;
  for (double& x : scaled) x *= -3.0;
  for (double& x : shifted) x += 1e3;
  EXPECT_NEAR(batch_means(scaled).sigma2_hat / base.sigma2_hat, 9.0, 1e-9);
  EXPECT_NEAR(batch_means(shifted).sigma2_hat / base.sigma2_hat, 1.0, 1e-6);
}

TEST(BatchMeans, TooFewSamples) {
  for (auto [n, b] : {std::pair<std::size_t, std::size_t>{10, 0}, {3, 0}, {0, 0}, {100, 30}, {100, 0}}) {
    std::vector<double> v(n, 1.0);
    try {
      if (b == 0 && n == 100) {
        batch_means(v, 0);
      } else if (b == 0) {
        batch_means(v);
      } else {
        batch_means(v, b);
      }
      FAIL() << n << " " << b;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::TooFewSamples);
    }
  }
  EXPECT_NO_THROW(batch_means(std::vector<double>(16, 1.0)));
}

TEST(BatchMeans, SubgeometricWarning) {
  auto est = batch_means(std::vector<double>(100, 1.0));
  EXPECT_FALSE(est.warning.has_value());
  attach_subgeometric_warning(est);
  EXPECT_TRUE(est.warning.has_value());
}

TEST(BatchMeans, CoverageOnGeometricMarginalChain) {
  const auto fam = BivariateFamily::build(reference_example(2).spec, 50);
  const double truth = 1.0 - fam.marginal_x(1);
  int covered = 0;
  for (int rep = 0; rep < 100; ++rep) {
    RunConfig cfg;
    cfg.chain = ChainKind::MarginalX;
    cfg.seed = 10000 + rep;
    cfg.n_steps = 1000000;
    const auto trace = run_chain(fam, cfg, [](const ChainState& s) { return s.x >= 2 ? 1.0 : 0.0; });
    const auto est = batch_means(trace.values);
    covered += std::abs(est.g_bar - truth) <= 2.0 * est.mcse;
  }
  EXPECT_GE(covered, 90);
}

}  // namespace
}  // namespace ergochain
