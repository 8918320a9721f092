#pragma once

#include <vector>

#include "ergochain/sequence.hpp"

namespace ergochain {

struct BirthDeath {
  double p = 0.0;  // up-move probability p_x
  double q = 0.0;  // down-move probability q_x
};

/// Truncated, renormalized member of the staircase family on {1..N}^2.
///
/// The joint mass is a_x on the diagonal (x, x) and b_y on the sub-diagonal
/// (y + 1, y). Truncation zeroes every index above N and additionally sets
/// b_N = 0, so the support is exactly the 2N - 1 staircase points and the
/// truncated object is itself a finite member of the family.
///
/// Immutable after construction.
class BivariateFamily {
 public:
  /// Throws NonPositiveSequence / DegenerateTruncation / InvalidSpec.
  static BivariateFamily build(const SequenceSpec& spec, int n);

  int size() const { return n_; }
  const SequenceSpec& spec() const { return spec_; }

  /// log of the retained mass before renormalization.
  double log_retained_mass() const { return log_retained_; }

  // Normalized masses; a(i) for 1 <= i <= N, b(i) for 0 <= i <= N (b(0) = b(N) = 0).
  double a(int i) const { return a_[i]; }
  double b(int i) const { return b_[i]; }
  double log_a(int i) const { return log_a_[i]; }
  double log_b(int i) const { return log_b_[i]; }

  double joint(int x, int y) const;
  double marginal_x(int x) const;  // a_x + b_{x-1}
  double marginal_y(int y) const;  // a_y + b_y
  double log_marginal_x(int x) const;
  double log_marginal_y(int y) const;

  /// pi_{X|Y}(x | y), supported on {y, y + 1}.
  double cond_x_given_y(int x, int y) const;
  /// pi_{Y|X}(y | x), supported on {x - 1, x}.
  double cond_y_given_x(int y, int x) const;

  /// pi_{X|Y}(y + 1 | y) = b_y / (a_y + b_y).
  double beta(int y) const;
  /// pi_{Y|X}(x - 1 | x) = b_{x-1} / (a_x + b_{x-1}).
  double down_weight(int x) const;

  /// Throws OutOfSupport unless 1 <= x <= N.
  BirthDeath birth_death(int x) const;

  bool in_support(int x, int y) const {
    return y >= 1 && y <= n_ && (x == y || (x == y + 1 && y < n_));
  }

 private:
  BivariateFamily() = default;

  int n_ = 0;
  SequenceSpec spec_;
  double log_retained_ = 0.0;
  std::vector<double> log_a_, log_b_;  // index 0 is unused for a, b_0 = 0
  std::vector<double> a_, b_;
};

/// Untruncated up/down probabilities p_x, q_x evaluated straight from the
/// sequences (scale-free, so no normalization is needed). Returns
/// (log p_x, log q_x).
std::pair<double, double> log_birth_death(const SequenceSpec& spec, long x);

/// Estimated asymptotic ratio with convergence flags.
struct LimitEstimate {
  double lower = 0.0;  // window min, liminf surrogate
  double upper = 0.0;  // window max, limsup surrogate
  bool converged = false;
  bool diverging = false;  // upper grows without bound across the window
  bool to_infinity = false;  // lower grows without bound as well
  bool to_zero = false;      // upper shrinks toward zero
  bool operator==(const LimitEstimate&) const = default;
};

struct TailLimits {
  double A = 0.0;
  double m = 0.0;
  double M = 0.0;
  double lim_a_over_bprev = 0.0;
  double lim_b_over_a = 0.0;
  LimitEstimate a_ratio;      // a_i / a_{i-1}
  LimitEstimate ab_ratio;     // a_i / b_i
  LimitEstimate a_over_bprev; // a_i / b_{i-1}
  LimitEstimate b_over_a;     // b_i / a_i
  bool declared = false;
  bool operator==(const TailLimits&) const = default;
};

/// Limits of the sequence ratios. Declared limits are returned verbatim;
/// otherwise each ratio is evaluated over the last `window` indices of
/// {2..horizon}, with limsup/liminf taken as window max/min. A ratio is
/// converged when the window max and min differ by at most 1e-6 relative.
TailLimits tail_limits(const SequenceSpec& spec, long horizon, long window);

/// Checks declared limits against closed-form ratios far in the tail
/// (1e-6 relative; infinite declarations must be matched by huge ratios).
bool declared_limits_consistent(const SequenceSpec& spec);

}  // namespace ergochain
