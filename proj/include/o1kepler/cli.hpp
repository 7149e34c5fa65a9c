#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace o1kepler {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_pass = 0, exit_failure = 1, exit_usage = 2, exit_resource = 3 };

/// Runs the tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Number formatting used in every CSV: 17 significant digits,
/// '.' separator, independent of the global locale.
std::string format_double(double x);

}  // namespace o1kepler
