#include "ergochain/subgeo.hpp"

#include <algorithm>
#include <cmath>

#include "ergochain/error.hpp"
#include "ergochain/logmath.hpp"

namespace ergochain {
namespace {

constexpr double kDivergenceThreshold = 1e3;

// log P(X >= i) and log P(X < i) for i = 1..N + 1.
struct TailLogs {
  std::vector<double> log_mu;
  std::vector<double> log_head;
};

TailLogs tail_logs(const BivariateFamily& fam) {
  const int n = fam.size();
  TailLogs t;
  t.log_mu.assign(n + 2, kNegInf);
  t.log_head.assign(n + 2, kNegInf);
  for (int i = n; i >= 1; --i) t.log_mu[i] = log_add_exp(t.log_mu[i + 1], fam.log_marginal_x(i));
  for (int i = 2; i <= n + 1; ++i) {
    t.log_head[i] = log_add_exp(t.log_head[i - 1], fam.log_marginal_x(i - 1));
  }
  return t;
}

double log_T(const BivariateFamily& fam, const TailLogs& t, int i) {
  const double la = fam.log_a(i - 1);
  const double lb = fam.log_b(i - 1);
  return la + lb - log_add_exp(la, lb) - t.log_mu[i] - t.log_head[i];
}

bool diverging(const std::vector<double>& logs) {
  if (logs.empty()) return false;
  const double overall = *std::max_element(logs.begin(), logs.end());
  if (!(overall > std::log(kDivergenceThreshold))) return false;
  const std::size_t split = logs.size() - std::max<std::size_t>(1, logs.size() / 4);
  if (split == 0) return false;
  const double early = *std::max_element(logs.begin(), logs.begin() + static_cast<long>(split));
  const double late = *std::max_element(logs.begin() + static_cast<long>(split), logs.end());
  return late - early > std::log1p(1e-6);
}

void check_index(const BivariateFamily& fam, int i) {
  if (i < 2 || i > fam.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "statistic index must satisfy 2 <= i <= N");
  }
}

}  // namespace

std::vector<Lemma4Stat> Lemma4Stats::fired() const {
  std::vector<Lemma4Stat> out;
  if (s1_diverging) out.push_back(Lemma4Stat::S1);
  if (s2_diverging) out.push_back(Lemma4Stat::S2);
  if (s3_diverging) out.push_back(Lemma4Stat::S3);
  return out;
}

std::vector<double> tail_probabilities(const BivariateFamily& fam) {
  const auto t = tail_logs(fam);
  std::vector<double> mu(t.log_mu.size() - 1);
  for (std::size_t i = 1; i < mu.size(); ++i) mu[i] = std::exp(t.log_mu[i]);
  return mu;
}

double conditional_variance_stat(const BivariateFamily& fam, int i) {
  check_index(fam, i);
  return std::exp(log_T(fam, tail_logs(fam), i));
}

double conditional_variance_direct(const BivariateFamily& fam, int i) {
  check_index(fam, i);
  const auto t = tail_logs(fam);
  const double mu = std::exp(t.log_mu[i]);
  const double one_minus_mu = std::exp(t.log_head[i]);
  const double sd = std::sqrt(mu * one_minus_mu);
  auto h = [&](int x) { return x >= i ? one_minus_mu / sd : -mu / sd; };
  double total = 0.0;
  for (int y = 1; y <= fam.size(); ++y) {
    const double beta = fam.beta(y);
    const double jump = h(y + 1) - h(y);
    total += fam.marginal_y(y) * jump * jump * beta * (1.0 - beta);
  }
  return total;
}

Lemma4Stats lemma4_tests(const SequenceSpec& spec, long horizon) {
  if (horizon < 2) throw Error(ErrorCode::IndexOutOfRange, "lemma4 horizon must be at least 2");
  Lemma4Stats s;
  s.horizon = horizon;
  // log sum_{x >= i} (a_x + b_x), indices 2..horizon + 1
  std::vector<double> log_tail(static_cast<std::size_t>(horizon) + 2, kNegInf);
  log_tail[horizon + 1] = spec.log_tail_mass(horizon);
  for (long i = horizon; i >= 2; --i) {
    log_tail[i] = log_add_exp(log_tail[i + 1], log_add_exp(spec.log_a(i), spec.log_b(i)));
  }
  for (long i = 2; i <= horizon; ++i) {
    const double la_prev = spec.log_a(i - 1);
    const double lb_prev = spec.log_b(i - 1);
    s.indices.push_back(i);
    s.log_s1.push_back(log_tail[i] - la_prev);
    s.log_s2.push_back(log_tail[i] - lb_prev);
    s.log_s3.push_back(spec.log_b(i) - spec.log_a(i));
  }
  s.s1_diverging = diverging(s.log_s1);
  s.s2_diverging = diverging(s.log_s2);
  s.s3_diverging = diverging(s.log_s3);
  return s;
}

Lemma4Stats lemma4_tests(const BivariateFamily& fam) {
  return lemma4_tests(fam.spec(), 4L * fam.size());
}

OperatorNormBounds operator_norm_bounds(const BivariateFamily& fam, std::optional<double> scan_p) {
  if (scan_p && !(*scan_p > 0.0 && *scan_p <= 1.0)) {
    throw Error(ErrorCode::BadScanProbability, "scan probability must lie in (0,1]");
  }
  const auto t = tail_logs(fam);
  double min_t = 1.0;
  OperatorNormBounds out;
  for (int i = 2; i <= fam.size(); ++i) {
    const double v = std::exp(log_T(fam, t, i));
    if (v < min_t) {
      min_t = v;
      out.argmin_i = i;
    }
  }
  out.px_norm_lb = std::clamp(1.0 - min_t, 0.0, 1.0);
  if (scan_p) out.rgs_norm_lb = std::clamp(1.0 - *scan_p * min_t, 0.0, 1.0);
  return out;
}

SubgeoReport subgeo_report(const BivariateFamily& fam) {
  const auto t = tail_logs(fam);
  SubgeoReport r;
  r.n = fam.size();
  double min_t = 1.0;
  for (int i = 2; i <= fam.size(); ++i) {
    r.indices.push_back(i);
    r.mu.push_back(std::exp(t.log_mu[i]));
    r.T.push_back(std::exp(log_T(fam, t, i)));
    min_t = std::min(min_t, r.T.back());
  }
  for (int y = 1; y <= fam.size(); ++y) r.beta.push_back(fam.beta(y));
  r.norm_lower_bound = std::clamp(1.0 - min_t, 0.0, 1.0);
  r.stats = lemma4_tests(fam);
  return r;
}

}  // namespace ergochain
