#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tracemon::cli {

/// Exit statuses shared by all subcommands.
enum Exit : int {
    ok = 0,
    input_error = 1,
    budget_exhausted = 2,
    final_verdict = 3,
    inequivalent = 4,
    internal_error = 5,
    checks_failed = 6,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace tracemon::cli
