#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace ergochain {

inline constexpr double kInvE = 0.36787944117144233;  // 1/e

// a_i = c1 i^{-d}, b_i = c2 i^{-d}
struct PowerLaw {
  double d = 2.0;
  double c1 = 0.0;
  double c2 = 0.0;
  bool operator==(const PowerLaw&) const = default;
};

// a_i = c r^i, b_i = r^i
struct Geometric {
  double c = 0.0;
  double ratio = kInvE;
  bool operator==(const Geometric&) const = default;
};

// a_i = c r_a^i, b_i = r_b^i
struct MixedGeometric {
  double c = 0.0;
  double ratio_a = kInvE;
  double ratio_b = kInvE * kInvE;
  bool operator==(const MixedGeometric&) const = default;
};

// Even i: a_i = c s^i, b_i = f^i.  Odd i: a_i = f^i, b_i = c s^i.
struct Alternating {
  double c = 0.0;
  double ratio_slow = kInvE;
  double ratio_fast = kInvE * kInvE;
  bool operator==(const Alternating&) const = default;
};

// Explicit prefix; past the end of each table the sequence continues
// geometrically from its last entry with factor tail_ratio.
struct Table {
  std::vector<double> a;
  std::vector<double> b;
  double tail_ratio = 0.5;
  bool operator==(const Table&) const = default;
};

using SequenceKind = std::variant<PowerLaw, Geometric, MixedGeometric, Alternating, Table>;

/// Asymptotic ratios asserted by the user. Entries are extended reals (may be +inf).
struct DeclaredLimits {
  double A = 0.0;                 // lim a_i / a_{i-1}
  double lim_ab = 0.0;            // lim a_i / b_i (m = M)
  double lim_a_over_bprev = 0.0;  // lim a_i / b_{i-1}
  double lim_b_over_a = 0.0;      // lim b_i / a_i
  bool operator==(const DeclaredLimits&) const = default;
};

/// Symbolic description of the pair of sequences {a_i}, {b_i}, i >= 1.
///
/// All evaluation happens in log-space so indices far into the tail never
/// underflow. b_0 is identically zero.
class SequenceSpec {
 public:
  SequenceSpec() = default;
  explicit SequenceSpec(SequenceKind kind, std::optional<DeclaredLimits> limits = std::nullopt);

  const SequenceKind& kind() const { return kind_; }
  const std::optional<DeclaredLimits>& declared_limits() const { return declared_; }
  void set_declared_limits(std::optional<DeclaredLimits> limits) { declared_ = limits; }

  std::string_view kind_name() const;

  /// log a_i for i >= 1. Non-finite results signal a non-positive entry.
  double log_a(long i) const;
  /// log b_i for i >= 0 (log b_0 = -inf).
  double log_b(long i) const;

  /// log sum_{x > k} (a_x + b_x), closed form or convergent extrapolation.
  double log_tail_mass(long k) const;
  /// log of the untruncated total mass sum_{x >= 1} (a_x + b_x).
  double log_total_mass() const { return log_tail_mass(0); }

  /// Throws Error(InvalidSpec) on structurally invalid parameters.
  void validate() const;

  bool operator==(const SequenceSpec&) const = default;

 private:
  SequenceKind kind_ = Geometric{};
  std::optional<DeclaredLimits> declared_;
};

/// Bisection for the root of `mass(c) = 1` on [lo, hi], assuming mass is
/// increasing. Stops once |mass - 1| <= 1e-14 or the bracket collapses.
template <class Mass>
double solve_unit_mass(Mass&& mass, double lo, double hi) {
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double m = mass(mid);
    if (std::abs(m - 1.0) <= 1e-14 || mid == lo || mid == hi) return mid;
    (m < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Returns a copy of `kind` with its free scale constant chosen so that the
/// untruncated family has unit mass: c for the geometric kinds, and
/// c1 = c2 for PowerLaw when both are zero (or the missing one when only
/// one is given). Tables are returned unchanged.
SequenceKind normalize_kind(SequenceKind kind);

}  // namespace ergochain
