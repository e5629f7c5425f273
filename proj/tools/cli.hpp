#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace etk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

// Runs the command line `args` (args[0] is the program name). Human-readable
// output goes to `out`, diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace etk::cli
