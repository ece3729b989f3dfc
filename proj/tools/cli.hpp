#pragma once

#include <iosfwd>

namespace analogy::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUnsolvable = 1,  // `solve --strict` without a solution, `check --strict` on false
  kExitUsage = 2,       // command line or operand parse errors
  kExitConfig = 3,      // inconsistent run configuration
  kExitInput = 4,       // malformed or unreadable input files
  kExitRuntime = 5,
};

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace analogy::cli
