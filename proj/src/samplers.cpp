#include "ergochain/samplers.hpp"

#include "ergochain/error.hpp"

namespace ergochain {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

UniformStream::UniformStream(std::uint64_t seed, std::uint64_t stream_id)
    : engine_(splitmix64(seed ^ splitmix64(stream_id))) {}

ChainState dgs_step(const BivariateFamily& fam, const ChainState& s, UniformStream& rng) {
  ChainState next = s;
  const double u_x = rng();
  const double u_y = rng();
  next.x = u_x < fam.beta(s.y) ? s.y + 1 : s.y;
  next.y = u_y < fam.down_weight(next.x) ? next.x - 1 : next.x;
  ++next.step;
  return next;
}

ChainState rgs_step(const BivariateFamily& fam, const ChainState& s, double p, UniformStream& rng) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::BadScanProbability, "scan probability must lie in (0,1)");
  }
  ChainState next = s;
  const double coin = rng();
  const double u = rng();
  if (coin < p) {
    next.x = u < fam.beta(s.y) ? s.y + 1 : s.y;
  } else {
    next.y = u < fam.down_weight(s.x) ? s.x - 1 : s.x;
  }
  ++next.step;
  return next;
}

int marginal_step(const BivariateFamily& fam, int x, UniformStream& rng) {
  const auto [p, q] = fam.birth_death(x);
  const double u = rng();
  if (u < p) return x + 1;
  if (u < p + q) return x - 1;
  return x;
}

Trace run_chain(const BivariateFamily& fam, const RunConfig& cfg,
                const std::function<double(const ChainState&)>& g) {
  if (cfg.thinning < 1) throw Error(ErrorCode::InvalidSpec, "thinning must be at least 1");
  if (cfg.chain == ChainKind::RGS && !(cfg.scan_p > 0.0 && cfg.scan_p < 1.0)) {
    throw Error(ErrorCode::BadScanProbability, "scan probability must lie in (0,1)");
  }
  ChainState state = cfg.init;
  if (cfg.chain == ChainKind::MarginalX) {
    if (state.x < 1 || state.x > fam.size()) {
      throw Error(ErrorCode::OutOfSupport, "initial x outside {1..N}");
    }
    state.y = state.x;
  } else if (!fam.in_support(state.x, state.y)) {
    throw Error(ErrorCode::OutOfSupport, "initial state is not a support point");
  }

  UniformStream rng(cfg.seed, static_cast<std::uint64_t>(cfg.chain));
  Trace trace;
  trace.states.reserve(cfg.n_steps / cfg.thinning);
  if (g) trace.values.reserve(cfg.n_steps);
  double sum = 0.0;
  for (std::uint64_t n = 1; n <= cfg.n_steps; ++n) {
    switch (cfg.chain) {
      case ChainKind::DGS: state = dgs_step(fam, state, rng); break;
      case ChainKind::RGS: state = rgs_step(fam, state, cfg.scan_p, rng); break;
      case ChainKind::MarginalX:
        state.x = state.y = marginal_step(fam, state.x, rng);
        ++state.step;
        break;
    }
    if (n % cfg.thinning == 0) trace.states.push_back(state);
    if (g) {
      const double v = g(state);
      trace.values.push_back(v);
      sum += v;
    }
  }
  if (g && cfg.n_steps > 0) trace.average = sum / static_cast<double>(cfg.n_steps);
  return trace;
}

}  // namespace ergochain
