#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace leadix::cli {

/// Runs the command line `args` (without the program name).
/// Returns 0 on success, 1 on invalid input data, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace leadix::cli
