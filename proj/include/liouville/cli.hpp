#pragma once

#include <iosfwd>

namespace liouville::cli {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verification failed or a computation did not succeed
inline constexpr int kExitUsage = 2;    // bad flags, bad shape or argument out of range

/// Entry point of the command-line tool; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace liouville::cli
