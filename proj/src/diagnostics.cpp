#include "ergochain/diagnostics.hpp"

#include <cmath>

#include "ergochain/error.hpp"

namespace ergochain {

BatchMeansEstimate batch_means(std::span<const double> values, std::optional<std::size_t> batch_size) {
  BatchMeansEstimate est;
  est.n = values.size();
  est.batch_size =
      batch_size.value_or(static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(est.n)))));
  if (est.batch_size == 0 || est.n / est.batch_size < 4) {
    throw Error(ErrorCode::TooFewSamples, "batch means needs at least four full batches");
  }
  est.num_batches = est.n / est.batch_size;

  double total = 0.0;
  for (double v : values) total += v;
  est.g_bar = total / static_cast<double>(est.n);

  // Welford over the batch means
  double mean = 0.0, m2 = 0.0;
  for (std::size_t k = 0; k < est.num_batches; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < est.batch_size; ++j) s += values[k * est.batch_size + j];
    const double bm = s / static_cast<double>(est.batch_size);
    const double delta = bm - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (bm - mean);
  }
  const double var = m2 / static_cast<double>(est.num_batches - 1);
  est.sigma2_hat = static_cast<double>(est.batch_size) * var;
  est.mcse = std::sqrt(est.sigma2_hat / static_cast<double>(est.n));
  return est;
}

void attach_subgeometric_warning(BatchMeansEstimate& est) {
  est.warning = "chain classified subgeometric: a CLT for this average is not guaranteed";
}

}  // namespace ergochain
