#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace avgroups::cli {

// Full command-line surface; parses args (without argv[0]), writes the
// result to out and diagnostics to err. Exit codes: 0 success (a NO
// verdict is still data), 2 invalid input, 3 resource cap exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace avgroups::cli
