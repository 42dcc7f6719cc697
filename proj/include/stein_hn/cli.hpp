#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stein_hn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

/// "a:b:step" (inclusive) and comma-separated lists of either.
std::vector<long> parse_integer_range(const std::string& text);
std::vector<double> parse_real_range(const std::string& text);

}  // namespace stein_hn::cli
