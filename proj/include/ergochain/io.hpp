#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ergochain/classify.hpp"
#include "ergochain/diagnostics.hpp"
#include "ergochain/kernels.hpp"
#include "ergochain/samplers.hpp"

namespace ergochain {

using Json = nlohmann::ordered_json;

/// Extended reals: finite values are JSON numbers, +-inf and nan are the
/// strings "inf", "-inf" and "nan".
Json real_to_json(double x);
double real_from_json(const Json& j);

Json spec_to_json(const SequenceSpec& spec);
/// Missing scale constants are solved for unit mass. Throws InvalidSpec.
SequenceSpec spec_from_json(const Json& j);
/// Parses inline JSON text, or reads it from a file when `source` does not
/// start with '{'. Throws InvalidSpec.
SequenceSpec load_spec(std::string_view source);

Json certificate_to_json(const DriftCertificate& cert, const RgsDriftCertificate* rgs = nullptr);
DriftCertificate certificate_from_json(const Json& j);
RgsDriftCertificate rgs_certificate_from_json(const Json& j);

Json subgeo_to_json(const SubgeoReport& report);
SubgeoReport subgeo_from_json(const Json& j);
/// Columns i, mu_i, T_i, S1_i, S2_i, S3_i; statistics as natural logs.
std::string subgeo_to_csv(const SubgeoReport& report);

Json verdict_to_json(const ErgodicityVerdict& v);
ErgodicityVerdict verdict_from_json(const Json& j);
Json verdicts_to_json(std::span<const ErgodicityVerdict> verdicts);

/// {"rate", "constant", "gap", "N"}; absent values are null.
Json tv_summary_json(const TVCurve& curve, std::optional<double> gap, int n);
/// Rows n = 1..n_max with header "n,tv".
std::string tv_to_csv(const TVCurve& curve);

std::string trace_to_csv(std::span<const ChainState> states);
Json batch_means_to_json(const BatchMeansEstimate& est);

}  // namespace ergochain
