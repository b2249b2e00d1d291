#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtradeoff::cli {

enum ExitCode : int { kSuccess = 0, kAssertionFailure = 1, kUsageError = 2, kIoError = 3 };

/// Runs the command line `args` (without the program name). The seed
/// defaults to $QTRADEOFF_SEED when set, else 1.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtradeoff::cli
