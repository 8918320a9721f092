#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace ergochain {

struct BatchMeansEstimate {
  std::size_t n = 0;
  std::size_t batch_size = 0;
  std::size_t num_batches = 0;
  double sigma2_hat = 0.0;  // asymptotic variance estimate
  double mcse = 0.0;        // sqrt(sigma2_hat / n)
  double g_bar = 0.0;
  std::optional<std::string> warning;
};

/// Non-overlapping batch means. The default batch size is floor(sqrt(n));
/// a partial final batch is dropped. Throws TooFewSamples when fewer than
/// four full batches fit.
BatchMeansEstimate batch_means(std::span<const double> values,
                               std::optional<std::size_t> batch_size = std::nullopt);

/// Marks an estimate as lacking a CLT guarantee (subgeometric chains).
void attach_subgeometric_warning(BatchMeansEstimate& est);

}  // namespace ergochain
