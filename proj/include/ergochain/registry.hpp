#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ergochain/sequence.hpp"

namespace ergochain {

/// Built-in reference families with their scale constants solved for unit
/// total mass at startup.
///   1: power law a_x = c1 x^-2, b_x = c2 x^-2, c1 = c2
///   2: a_x = c e^-x, b_x = e^-x
///   3: a_x = c e^-x, b_x = e^-2x
///   4: a and b alternate between c e^-x and e^-2x by parity
struct ReferenceExample {
  int id = 0;
  std::string name;
  SequenceSpec spec;
  std::optional<DeclaredLimits> known_limits;
  std::string expected_verdict;  // "Geometric" or "Subgeometric"
};

/// Throws InvalidSpec for ids outside 1..4.
const ReferenceExample& reference_example(int id);
const std::vector<ReferenceExample>& reference_examples();

}  // namespace ergochain
