#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcm::cli {

/// Exit codes of pcmtool.
enum ExitCode : int {
    kSuccess = 0,
    kFailure = 1,  // verification failure or runtime error
    kUsage = 2,    // bad arguments or unparseable/invalid input
};

/// Environment variable holding the default worker count; --workers wins.
inline constexpr const char* kWorkersEnv = "PCM_WORKERS";

/// Runs pcmtool with `args` (args[0] is the program name).
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace pcm::cli
