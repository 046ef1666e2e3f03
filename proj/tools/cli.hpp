#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slp::cli {

/// Runs one command line (without the program name). Returns 0 on success,
/// 2 on a usage error and 1 when the command itself fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slp::cli
