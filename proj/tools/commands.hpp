#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ringlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvalidGraph = 3;

/// Environment variable that overrides --threads.
inline constexpr const char* kThreadsEnv = "RING_LAB_THREADS";

/// Runs the command line `args` (without the program name). Results go to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ringlab::cli
