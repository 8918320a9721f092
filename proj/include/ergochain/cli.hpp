#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ergochain::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInconclusive = 3,
  kNumericFailure = 4,
};

/// Runs one command line (args excludes the program name). Results go to
/// `out` or to the --out file; diagnostics and usage text go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ergochain::cli
