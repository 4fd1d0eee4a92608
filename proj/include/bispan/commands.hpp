#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bispan {

/// Batch command dispatch; returns the process exit code (0 success,
/// 1 check-suite failure, 2 usage/parse error). All output goes to the given
/// streams, so golden tests can call this directly.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bispan
