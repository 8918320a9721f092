#include "ergochain/error.hpp"

namespace ergochain {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NonPositiveSequence: return "NonPositiveSequence";
    case ErrorCode::DegenerateTruncation: return "DegenerateTruncation";
    case ErrorCode::OutOfSupport: return "OutOfSupport";
    case ErrorCode::BadZ: return "BadZ";
    case ErrorCode::BadScanProbability: return "BadScanProbability";
    case ErrorCode::COutOfRange: return "COutOfRange";
    case ErrorCode::StartNotInSupport: return "StartNotInSupport";
    case ErrorCode::NotSymmetricKernel: return "NotSymmetricKernel";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::UnknownFormat: return "UnknownFormat";
    case ErrorCode::EmptyInput: return "EmptyInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace ergochain
