#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace horco {

/// Command-line driver. `args` excludes the program name. Exit codes:
/// 0 all rules oriented, 1 some rule not oriented, 2 budget exhausted only,
/// 3 input or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Small enumeration-based checks (ordering agreement, inclusion, counters);
/// prints one line per check.
bool run_selftest(std::ostream& out);

}  // namespace horco
