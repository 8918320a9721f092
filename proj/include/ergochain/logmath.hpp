#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace ergochain {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(exp(x) + exp(y)); either argument may be -inf.
inline double log_add_exp(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  const double hi = std::max(x, y);
  return hi + std::log1p(std::exp(-std::abs(x - y)));
}

inline double log_sum_exp(std::span<const double> xs) {
  double hi = kNegInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kNegInf || std::isinf(hi)) return hi;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

/// u / (u + v) from log u and log v, without forming u or v.
inline double two_point_weight(double log_u, double log_v) {
  if (log_u == kNegInf) return 0.0;
  if (log_v == kNegInf) return 1.0;
  return 1.0 / (1.0 + std::exp(log_v - log_u));
}

}  // namespace ergochain
