#pragma once

#include <iosfwd>

namespace pframes::cli {

/// Exit codes of the pframes executable.
enum ExitCode : int { kPass = 0, kCheckFailure = 1, kConfigError = 2, kInternalError = 3 };

/// Whole command line in, exit code out. Reports go to `out` (or --out),
/// diagnostics and warnings to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pframes::cli
