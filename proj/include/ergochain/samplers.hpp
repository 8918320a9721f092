#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "ergochain/family.hpp"
#include "ergochain/kernels.hpp"

namespace ergochain {

/// Independent uniform(0,1) stream keyed by (seed, stream id).
///
/// Backed by mt19937_64, whose output sequence is fixed by the standard;
/// uniforms are formed from the top 53 bits so trajectories are identical
/// across platforms.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  void skip(unsigned long long count) { engine_.discard(count); }
  std::uint64_t consumed() const { return consumed_; }

  double operator()() {
    ++consumed_;
    return next();
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t consumed_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

struct ChainState {
  int x = 1;
  int y = 1;
  std::uint64_t step = 0;
  bool operator==(const ChainState&) const = default;
};

/// x' ~ pi(. | y) then y' ~ pi(. | x'); two uniforms per step.
ChainState dgs_step(const BivariateFamily& fam, const ChainState& s, UniformStream& rng);
/// Coin B ~ Bernoulli(p): refresh x holding y, else refresh y holding x.
/// Two uniforms per step. Throws BadScanProbability.
ChainState rgs_step(const BivariateFamily& fam, const ChainState& s, double p, UniformStream& rng);
/// Birth-death move with threshold order up, down, stay; one uniform.
int marginal_step(const BivariateFamily& fam, int x, UniformStream& rng);

struct RunConfig {
  ChainKind chain = ChainKind::DGS;
  double scan_p = 0.5;
  std::uint64_t seed = 0;
  std::uint64_t n_steps = 0;
  ChainState init;
  std::uint64_t thinning = 1;
};

struct Trace {
  std::vector<ChainState> states;  // every thinning-th state, floor(n/k) entries
  std::vector<double> values;      // g(state) at steps 1..n when g is supplied
  std::optional<double> average;   // ergodic average of g
};

/// Runs the configured chain; deterministic given the config. The marginal
/// chain keeps y = x. The stream id is derived from the chain kind so
/// different chains with one seed use independent streams.
Trace run_chain(const BivariateFamily& fam, const RunConfig& cfg,
                const std::function<double(const ChainState&)>& g = {});

}  // namespace ergochain
