#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srm::cli {

/// Runs the command-line tool on `args` (program name excluded), writing
/// results to `out` and problems to `err`.
///
/// Exit codes: 0 success, 1 failed property checks, 2 validation or
/// configuration errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srm::cli
