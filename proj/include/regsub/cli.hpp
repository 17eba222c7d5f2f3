#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace regsub {

// Full command-line dispatch, separated from main() so tests can drive it
// in-process. Returns the process exit code: 0 ok, 2 usage error, 1 runtime
// (domain) error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace regsub
