#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flextile::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_fail = 1,
    exit_usage = 2,
    exit_indeterminate = 3,
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flextile::cli
