#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace metent::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { ok = 0, input_error = 1, certification_failure = 2 };

/// Expands "start:stop:points[:log]" into an ascending positive grid.
std::vector<double> parse_grid(const std::string& spec);

/// Runs one subcommand; argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace metent::cli
