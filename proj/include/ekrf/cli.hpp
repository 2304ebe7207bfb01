#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ekrf {

/// Entry point for the `ekrf` tool. `args` excludes the program name.
/// Exit codes: 0 success/optimal, 1 condition violated, 2 usage or input
/// error, 3 search finished without proving optimality.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ekrf
