#ifndef MEMGIFT_CLI_H_
#define MEMGIFT_CLI_H_

#include <ostream>

namespace memgift::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConfig = 3;

// Runs the `memgift` command line. Normal output goes to `out`, warnings
// and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace memgift::cli

#endif  // MEMGIFT_CLI_H_
