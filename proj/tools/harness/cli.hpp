#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bils::harness {

/// Exit codes of the bils tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAlgorithmic = 1;  // rank deficiency, empty search radius
inline constexpr int kExitUsage = 2;        // bad flags, unreadable or malformed input

/// Runs `bils <args...>` (args excludes the program name). Results go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bils::harness
