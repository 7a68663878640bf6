#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wcc::cli {

/// Runs one command. `args` excludes the program name. Returns 0 when the
/// report status is ok, 1 on a diagnostic, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wcc::cli
