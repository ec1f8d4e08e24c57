#pragma once

#include <iosfwd>

namespace ntas::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kValidationFailure = 2,
  kNonConvergence = 3,
};

/// Entry point of the `ntas` tool; writes results to `out` unless --out is
/// given, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ntas::cli
