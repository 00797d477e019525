#pragma once

#include <iosfwd>

namespace failscen::cli {

// Exit codes, stable across releases so scripts can branch on them.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadArgs = 1;
inline constexpr int kExitUnparseable = 2;
inline constexpr int kExitNoPatterns = 3;
inline constexpr int kExitIo = 4;
inline constexpr int kExitBadFormat = 5;
inline constexpr int kExitEmptySheet = 6;

// Full driver: parses argv, dispatches the subcommand, prints to the given
// streams, and returns the exit code. The two-argument form writes to
// std::cout / std::cerr.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace failscen::cli
