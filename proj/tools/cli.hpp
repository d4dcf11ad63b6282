#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace casimir::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kSuccess = 0,
  kCheckFailure = 1,
  kUsageError = 2,
};

/// Runs the `casimir` command line with argv-style arguments (program name
/// excluded). Data goes to `out` unless --output names a file; diagnostics go
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
