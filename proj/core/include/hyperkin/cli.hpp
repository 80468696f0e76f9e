#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperkin {

// Full command-line driver, callable in-process. `args` excludes the program
// name. Returns the exit code: 0 success, 1 runtime failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperkin
