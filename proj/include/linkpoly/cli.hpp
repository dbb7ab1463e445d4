#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linkpoly {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitInputError = 2 };

/// Runs the tool on `args` (without the program name). A trailing "--" or a
/// "-" input reads the diagram from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace linkpoly
