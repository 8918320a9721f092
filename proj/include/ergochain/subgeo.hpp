#pragma once

#include <optional>
#include <vector>

#include "ergochain/family.hpp"

namespace ergochain {

enum class Lemma4Stat { S1, S2, S3 };

/// Reciprocal-factor statistics whose divergence forces
/// liminf E[Var(h_i(X) | Y)] = 0:
///   S1_i = sum_{x>=i} (a_x + b_x) / a_{i-1}
///   S2_i = sum_{x>=i} (a_x + b_x) / b_{i-1}
///   S3_i = b_i / a_i
/// Values are stored as natural logs since they overflow quickly.
struct Lemma4Stats {
  long horizon = 0;
  std::vector<long> indices;  // i = 2..horizon
  std::vector<double> log_s1, log_s2, log_s3;
  bool s1_diverging = false;
  bool s2_diverging = false;
  bool s3_diverging = false;

  bool any() const { return s1_diverging || s2_diverging || s3_diverging; }
  std::vector<Lemma4Stat> fired() const;
  bool operator==(const Lemma4Stats&) const = default;
};

struct SubgeoReport {
  int n = 0;
  std::vector<int> indices;  // i = 2..N
  std::vector<double> mu;    // mu_i = P(X >= i), aligned with indices
  std::vector<double> T;     // E[Var(h_i(X) | Y)], aligned with indices
  std::vector<double> beta;  // beta_y = b_y / (a_y + b_y), y = 1..N
  double norm_lower_bound = 0.0;
  Lemma4Stats stats;
  bool operator==(const SubgeoReport&) const = default;
};

/// Closed form [mu_i (1 - mu_i)]^{-1} a_{i-1} b_{i-1} / (a_{i-1} + b_{i-1}).
/// Throws IndexOutOfRange unless 2 <= i <= N.
double conditional_variance_stat(const BivariateFamily& fam, int i);

/// The same expectation assembled state by state:
/// sum_y pi_Y(y) Var(h_i(X) | Y = y) with the two-point law (1 - beta_y, beta_y).
double conditional_variance_direct(const BivariateFamily& fam, int i);

/// P(X >= i) for i = 1..N + 1, accumulated from the tail (index 0 unused).
std::vector<double> tail_probabilities(const BivariateFamily& fam);

/// Evaluates the three statistics over i = 2..horizon on the untruncated
/// sequences. A statistic is flagged diverging when its running max exceeds
/// 1e3 and its max over the last quarter of indices exceeds the max over the
/// earlier indices.
Lemma4Stats lemma4_tests(const SequenceSpec& spec, long horizon);
/// Uses the family's sequences with horizon 4N.
Lemma4Stats lemma4_tests(const BivariateFamily& fam);

struct OperatorNormBounds {
  double px_norm_lb = 0.0;
  std::optional<double> rgs_norm_lb;
  int argmin_i = 2;
};

/// ||P_X|| >= 1 - min_i T_i and ||P_RGS|| >= 1 - p min_i T_i, from the
/// test functions h_i (embedded as f(x, y) = h_i(x) for the random scan).
OperatorNormBounds operator_norm_bounds(const BivariateFamily& fam,
                                        std::optional<double> scan_p = std::nullopt);

SubgeoReport subgeo_report(const BivariateFamily& fam);

}  // namespace ergochain
