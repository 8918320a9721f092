#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ergochain {

enum class ErrorCode {
  InvalidSpec,
  NonPositiveSequence,
  DegenerateTruncation,
  OutOfSupport,
  BadZ,
  BadScanProbability,
  COutOfRange,
  StartNotInSupport,
  NotSymmetricKernel,
  IndexOutOfRange,
  TooFewSamples,
  UnknownFormat,
  EmptyInput,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ergochain
