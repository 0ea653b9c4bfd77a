#pragma once

#include <iosfwd>

namespace pwmap {

// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,     // verification failed or numeric-integrity error
    kExitUsage = 2,       // bad arguments
    kExitRuleRange = 3,   // b = g(a) outside [0, 1] on the sweep grid
};

// Entry point of `pwmap`. Results go to `out` unless --out names a file.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pwmap
