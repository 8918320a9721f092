#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ergochain/family.hpp"

namespace ergochain {

enum class ChainKind { MarginalX, DGS, RGS };

/// Support point. For the marginal chain only x is meaningful and y is 0.
struct State {
  int x = 1;
  int y = 0;
  auto operator<=>(const State&) const = default;
};

/// Position of (x, y) in the staircase order (1,1),(2,1),(2,2),(3,2),...
inline std::size_t staircase_index(State s) {
  return s.x == s.y ? static_cast<std::size_t>(2 * (s.x - 1)) : static_cast<std::size_t>(2 * s.y - 1);
}

inline State staircase_state(std::size_t index) {
  const int k = static_cast<int>(index / 2);
  return index % 2 == 0 ? State{k + 1, k + 1} : State{k + 2, k + 1};
}

struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;
};

struct SpectralGap {
  double norm_estimate = 0.0;  // second-largest |eigenvalue|
  double gap = 1.0;            // computed directly, so tiny gaps keep their digits
};

/// Sparse row-stochastic matrix together with its stationary vector.
/// Immutable after construction; concurrent read-only use is safe.
class TransitionMatrix {
 public:
  struct Entry {
    std::size_t col;
    double value;
  };

  ChainKind kind() const { return kind_; }
  double scan_p() const { return scan_p_; }
  int truncation() const { return n_; }
  std::size_t size() const { return states_.size(); }

  std::span<const State> states() const { return states_; }
  std::span<const double> stationary() const { return stationary_; }
  std::span<const Entry> row(std::size_t i) const {
    return {entries_.data() + row_ptr_[i], entries_.data() + row_ptr_[i + 1]};
  }
  double at(std::size_t i, std::size_t j) const;

  std::optional<std::size_t> index_of(State s) const;

  /// v P for a row vector v.
  std::vector<double> left_multiply(std::span<const double> v) const;
  /// P f for a column vector f.
  std::vector<double> right_multiply(std::span<const double> f) const;

  double max_row_sum_error() const;
  /// || stationary P - stationary ||_1
  double stationarity_residual() const;
  /// max |pi(s) P(s,s') - pi(s') P(s',s)| over all pairs.
  double symmetry_residual() const;

 private:
  friend TransitionMatrix build_px(const BivariateFamily&);
  friend TransitionMatrix build_pdgs(const BivariateFamily&);
  friend TransitionMatrix build_prgs(const BivariateFamily&, double);
  friend SpectralGap spectral_gap(const TransitionMatrix&);

  ChainKind kind_ = ChainKind::MarginalX;
  double scan_p_ = 0.0;
  int n_ = 0;
  std::vector<State> states_;
  std::vector<double> stationary_;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<Entry> entries_;
  SymmetricTridiagonal marginal_;  // symmetrized P_X, kept for the random scan

  void push_row(std::vector<Entry> row);
};

/// Birth-death kernel of the x-marginal of the deterministic scan.
TransitionMatrix build_px(const BivariateFamily& fam);
/// Deterministic scan: draw x' ~ pi(.|y), then y' ~ pi(.|x').
TransitionMatrix build_pdgs(const BivariateFamily& fam);
/// Random scan: with probability p refresh x holding y, else refresh y holding x.
/// Throws BadScanProbability unless 0 < p < 1.
TransitionMatrix build_prgs(const BivariateFamily& fam, double p);

struct TVCurve {
  State start;
  int n_max = 0;
  std::vector<double> values;  // values[n], n = 0..n_max
  std::optional<double> rate;
  std::optional<double> constant;
  int fit_first = 0;
  int fit_last = -1;
};

/// Total-variation distance ||P^n(start, .) - stationary||_TV for n = 0..n_max,
/// computed by repeated vector-matrix products. The geometric rate is a
/// least-squares fit of log TV over the trailing half of the steps whose TV
/// exceeds 1e-13; at least 5 such points are needed to report a rate.
/// Throws StartNotInSupport.
TVCurve tv_curve(const TransitionMatrix& p, State start, int n_max);


/// D^{1/2} P D^{-1/2} of a marginal-chain matrix, D = diag(stationary).
SymmetricTridiagonal symmetrize_tridiagonal(const TransitionMatrix& p);

/// Second-largest absolute eigenvalue of the symmetrized kernel. MarginalX
/// uses a tridiagonal eigensolver; RGS maps the marginal spectrum through
/// the two-projection identity lam -> (1 + sqrt(1 - 4p(1-p)(1 - lam))) / 2.
/// Throws NotSymmetricKernel on DGS.
SpectralGap spectral_gap(const TransitionMatrix& p);

}  // namespace ergochain
