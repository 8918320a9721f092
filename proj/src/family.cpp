#include "ergochain/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergochain/error.hpp"
#include "ergochain/logmath.hpp"

namespace ergochain {
namespace {

// log p_x and log q_x from log a_{x-1}, log a_x, log b_{x-1}, log b_x.
std::pair<double, double> log_pq(double la_prev, double la, double lb_prev, double lb) {
  const double up_den = log_add_exp(la, lb_prev) + log_add_exp(la, lb);
  const double log_p = lb == kNegInf ? kNegInf : la + lb - up_den;
  double log_q = kNegInf;
  if (lb_prev != kNegInf) {
    log_q = la_prev + lb_prev - log_add_exp(la, lb_prev) - log_add_exp(la_prev, lb_prev);
  }
  return {log_p, log_q};
}

LimitEstimate estimate_from_logs(const std::vector<double>& logs) {
  LimitEstimate est;
  const auto [lo, hi] = std::minmax_element(logs.begin(), logs.end());
  est.lower = std::exp(*lo);
  est.upper = std::exp(*hi);
  est.converged = -std::expm1(*lo - *hi) <= 1e-6;
  const std::size_t quarter = std::max<std::size_t>(1, logs.size() / 4);
  const double first_max = *std::max_element(logs.begin(), logs.begin() + quarter);
  const double last_max = *std::max_element(logs.end() - quarter, logs.end());
  est.diverging = !est.converged && est.upper > 1e3 && last_max - first_max > std::log1p(1e-6);
  const double first_min = *std::min_element(logs.begin(), logs.begin() + quarter);
  const double last_min = *std::min_element(logs.end() - quarter, logs.end());
  est.to_infinity = est.diverging && est.lower > 1e3 && last_min > first_min;
  est.to_zero = !est.converged && est.upper < 1e-3 && last_max < first_max;
  return est;
}

LimitEstimate declared_estimate(double v) {
  return LimitEstimate{v, v, true, std::isinf(v), std::isinf(v), v == 0.0};
}

}  // namespace

BivariateFamily BivariateFamily::build(const SequenceSpec& spec, int n) {
  spec.validate();
  if (n < 2) throw Error(ErrorCode::InvalidSpec, "truncation level N must be at least 2");

  BivariateFamily fam;
  fam.n_ = n;
  fam.spec_ = spec;
  fam.log_a_.assign(n + 1, kNegInf);
  fam.log_b_.assign(n + 1, kNegInf);

  std::vector<double> terms;
  terms.reserve(2 * n);
  for (int i = 1; i <= n; ++i) {
    const double la = spec.log_a(i);
    if (!std::isfinite(la)) {
      throw Error(ErrorCode::NonPositiveSequence, "a_" + std::to_string(i) + " is not positive");
    }
    fam.log_a_[i] = la;
    terms.push_back(la);
    if (i < n) {
      const double lb = spec.log_b(i);
      if (!std::isfinite(lb)) {
        throw Error(ErrorCode::NonPositiveSequence, "b_" + std::to_string(i) + " is not positive");
      }
      fam.log_b_[i] = lb;
      terms.push_back(lb);
    }
  }

  const double log_total = log_sum_exp(terms);
  if (!std::isfinite(log_total) || std::exp(log_total) == 0.0) {
    throw Error(ErrorCode::DegenerateTruncation, "retained mass underflows to zero");
  }
  fam.log_retained_ = log_total;

  fam.a_.assign(n + 1, 0.0);
  fam.b_.assign(n + 1, 0.0);
  for (int i = 1; i <= n; ++i) {
    fam.log_a_[i] -= log_total;
    fam.a_[i] = std::exp(fam.log_a_[i]);
    if (i < n) {
      fam.log_b_[i] -= log_total;
      fam.b_[i] = std::exp(fam.log_b_[i]);
    }
  }
  return fam;
}

double BivariateFamily::joint(int x, int y) const {
  if (!in_support(x, y)) return 0.0;
  return x == y ? a_[y] : b_[y];
}

double BivariateFamily::log_marginal_x(int x) const {
  return log_add_exp(log_a_[x], log_b_[x - 1]);
}

double BivariateFamily::log_marginal_y(int y) const { return log_add_exp(log_a_[y], log_b_[y]); }

double BivariateFamily::marginal_x(int x) const { return a_[x] + b_[x - 1]; }

double BivariateFamily::marginal_y(int y) const { return a_[y] + b_[y]; }

double BivariateFamily::beta(int y) const { return two_point_weight(log_b_[y], log_a_[y]); }

double BivariateFamily::down_weight(int x) const {
  return two_point_weight(log_b_[x - 1], log_a_[x]);
}

double BivariateFamily::cond_x_given_y(int x, int y) const {
  if (y < 1 || y > n_) return 0.0;
  if (x == y) return two_point_weight(log_a_[y], log_b_[y]);
  if (x == y + 1) return beta(y);
  return 0.0;
}

double BivariateFamily::cond_y_given_x(int y, int x) const {
  if (x < 1 || x > n_) return 0.0;
  if (y == x) return two_point_weight(log_a_[x], log_b_[x - 1]);
  if (y == x - 1) return down_weight(x);
  return 0.0;
}

BirthDeath BivariateFamily::birth_death(int x) const {
  if (x < 1 || x > n_) {
    throw Error(ErrorCode::OutOfSupport, "state " + std::to_string(x) + " outside {1.." +
                                             std::to_string(n_) + "}");
  }
  const double la_prev = x > 1 ? log_a_[x - 1] : kNegInf;
  const auto [lp, lq] = log_pq(la_prev, log_a_[x], log_b_[x - 1], log_b_[x]);
  return {std::exp(lp), std::exp(lq)};
}

std::pair<double, double> log_birth_death(const SequenceSpec& spec, long x) {
  const double la_prev = x > 1 ? spec.log_a(x - 1) : kNegInf;
  return log_pq(la_prev, spec.log_a(x), spec.log_b(x - 1), spec.log_b(x));
}

TailLimits tail_limits(const SequenceSpec& spec, long horizon, long window) {
  if (window < 10) throw Error(ErrorCode::InvalidSpec, "tail window must be at least 10");
  TailLimits out;
  if (const auto& d = spec.declared_limits()) {
    out.declared = true;
    out.A = d->A;
    out.m = out.M = d->lim_ab;
    out.lim_a_over_bprev = d->lim_a_over_bprev;
    out.lim_b_over_a = d->lim_b_over_a;
    out.a_ratio = declared_estimate(d->A);
    out.ab_ratio = declared_estimate(d->lim_ab);
    out.a_over_bprev = declared_estimate(d->lim_a_over_bprev);
    out.b_over_a = declared_estimate(d->lim_b_over_a);
    return out;
  }

  const long first = std::max(2L, horizon - window + 1);
  std::vector<double> a_ratio, ab, a_bprev, b_a;
  double la_prev = spec.log_a(first - 1);
  double lb_prev = spec.log_b(first - 1);
  for (long i = first; i <= horizon; ++i) {
    const double la = spec.log_a(i);
    const double lb = spec.log_b(i);
    a_ratio.push_back(la - la_prev);
    ab.push_back(la - lb);
    a_bprev.push_back(la - lb_prev);
    b_a.push_back(lb - la);
    la_prev = la;
    lb_prev = lb;
  }
  out.a_ratio = estimate_from_logs(a_ratio);
  out.ab_ratio = estimate_from_logs(ab);
  out.a_over_bprev = estimate_from_logs(a_bprev);
  out.b_over_a = estimate_from_logs(b_a);
  out.A = out.a_ratio.upper;
  out.m = out.ab_ratio.lower;
  out.M = out.ab_ratio.upper;
  out.lim_a_over_bprev = out.a_over_bprev.upper;
  out.lim_b_over_a = out.b_over_a.upper;
  return out;
}

bool declared_limits_consistent(const SequenceSpec& spec) {
  const auto& d = spec.declared_limits();
  if (!d) return true;
  constexpr long kFar = 10'000'000;
  const double la = spec.log_a(kFar), la_prev = spec.log_a(kFar - 1);
  const double lb = spec.log_b(kFar), lb_prev = spec.log_b(kFar - 1);
  auto agrees = [](double log_estimate, double declared) {
    if (std::isinf(declared)) return log_estimate > std::log(1e6);
    const double est = std::exp(log_estimate);
    if (declared == 0.0) return est <= 1e-6;
    return std::abs(est - declared) <= 1e-6 * std::abs(declared);
  };
  return agrees(la - la_prev, d->A) && agrees(la - lb, d->lim_ab) &&
         agrees(la - lb_prev, d->lim_a_over_bprev) && agrees(lb - la, d->lim_b_over_a);
}

}  // namespace ergochain
