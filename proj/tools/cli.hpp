#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unitfrac::cli {

// Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (without the program name). Diagnostics for exit code 2
// go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace unitfrac::cli
