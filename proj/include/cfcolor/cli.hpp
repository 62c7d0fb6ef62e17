#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfcolor {

/**
 * Command-line entry point. `args` excludes the program name.
 *
 * Exit status: 0 on success, 1 when an input violates a precondition
 * (including malformed arguments and exhausted search budgets), 2 when a
 * computed certificate contradicts the statement it should witness.
 * Diagnostics go to `err`; results go to `out` unless --output is given.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfcolor
