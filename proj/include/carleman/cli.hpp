#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace carleman::cli {

enum ExitCode : int { kPass = 0, kVerifyFailed = 1, kInvalidInput = 2, kNumericalFailure = 3 };

/// Runs the command line `args` (without the program name). Results go to
/// `out`, progress and error JSON to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace carleman::cli
