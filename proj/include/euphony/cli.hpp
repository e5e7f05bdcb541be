#pragma once

#include <ostream>

namespace euphony {

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPartialFailure = 1;
inline constexpr int kExitConfigError = 2;

// Runs the `euphony` command line with the given streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace euphony
