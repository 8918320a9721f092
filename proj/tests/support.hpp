#pragma once

#include <cmath>
#include <random>
#include <string>

#include "ergochain/sequence.hpp"

namespace ergochain::testing {

// Values reproduced by tests/oracles/closed_forms.py at 40 digits.
inline constexpr double kGeoC = 0.7182818284590452;
inline constexpr double kGeoA1 = 0.2642411176571154;
inline constexpr double kGeoB1 = 0.3678794411714423;
inline constexpr double kGeoP1 = 0.5819767068693264;
inline constexpr double kGeoP2 = 0.1216399097654303;
inline constexpr double kGeoQ2 = 0.3306515563307671;
inline constexpr double kGeoCoefZ13 = 0.9601877676225290;
inline constexpr double kGeoTLimit = 0.2090116465653368;
inline constexpr double kGeoT20 = 0.2090116489074362;
inline constexpr double kGeoT30 = 0.2090116465654431;
inline constexpr double kLiftC = 1.0205144281094646;
inline constexpr double kLiftGamma = 0.9899489769353540;
inline constexpr double kPowerC1 = 0.3039635509270133;
inline constexpr double kMixedC = 1.4493404070890501;

/// Random family of any kind with moderate parameters.
inline SequenceSpec random_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (rng() % 5) {
    case 0: return SequenceSpec(PowerLaw{1.5 + 2.0 * u(rng), 0.1 + u(rng), 0.1 + u(rng)});
    case 1: return SequenceSpec(Geometric{0.1 + 3.0 * u(rng), 0.2 + 0.7 * u(rng)});
    case 2: {
      const double ra = 0.2 + 0.7 * u(rng);
      return SequenceSpec(MixedGeometric{0.1 + 3.0 * u(rng), ra, ra * (0.3 + 0.7 * u(rng))});
    }
    case 3: {
      const double s = 0.3 + 0.6 * u(rng);
      return SequenceSpec(Alternating{0.1 + 3.0 * u(rng), s, s * (0.3 + 0.6 * u(rng))});
    }
    default: {
      Table t;
      const int len = 3 + static_cast<int>(rng() % 10);
      for (int i = 0; i < len; ++i) {
        t.a.push_back(0.05 + u(rng));
        t.b.push_back(0.05 + u(rng));
      }
      t.tail_ratio = 0.3 + 0.6 * u(rng);
      return SequenceSpec(t);
    }
  }
}

}  // namespace ergochain::testing
