#include "ergochain/registry.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ergochain/error.hpp"

namespace ergochain {
namespace {

std::vector<ReferenceExample> make_examples() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<ReferenceExample> out;

  const auto power = std::get<PowerLaw>(normalize_kind(PowerLaw{2.0, 0.0, 0.0}));
  out.push_back({1, "power-law d=2", SequenceSpec(power),
                 DeclaredLimits{1.0, power.c1 / power.c2, power.c1 / power.c2, power.c2 / power.c1},
                 "Subgeometric"});

  const auto geo = std::get<Geometric>(normalize_kind(Geometric{}));
  out.push_back({2, "geometric a=c e^-x, b=e^-x", SequenceSpec(geo),
                 DeclaredLimits{kInvE, geo.c, geo.c * kInvE, 1.0 / geo.c},
                 "Geometric"});

  const auto mixed = std::get<MixedGeometric>(normalize_kind(MixedGeometric{}));
  out.push_back({3, "mixed a=c e^-x, b=e^-2x", SequenceSpec(mixed),
                 DeclaredLimits{kInvE, inf, inf, 0.0}, "Subgeometric"});

  const auto alt = std::get<Alternating>(normalize_kind(Alternating{}));
  out.push_back({4, "alternating parity", SequenceSpec(alt), std::nullopt, "Subgeometric"});
  return out;
}

}  // namespace

const std::vector<ReferenceExample>& reference_examples() {
  static const std::vector<ReferenceExample> examples = make_examples();
  return examples;
}

const ReferenceExample& reference_example(int id) {
  if (id < 1 || id > 4) throw Error(ErrorCode::InvalidSpec, "reference examples are numbered 1..4");
  return reference_examples()[static_cast<std::size_t>(id - 1)];
}

}  // namespace ergochain
