#pragma once

#include <string>
#include <vector>

namespace vscan::cli {

/// Process exit codes; the only machine contract of the command line.
enum ExitCode : int {
    kExitClean = 0,
    kExitError = 1,  ///< operational failure (missing files, I/O, bad rule pack)
    kExitGate = 2,   ///< policy gate tripped (--fail-level, --fail-on-new)
    kExitUsage = 64,
};

/// Environment variable that overrides the output directory (below flags).
inline constexpr const char* kOutDirEnv = "VSCAN_OUT";

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args);

int run(int argc, char** argv);

}  // namespace vscan::cli
