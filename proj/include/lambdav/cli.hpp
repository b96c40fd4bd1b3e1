#pragma once

#include <iosfwd>

namespace lambdav {

// Exit statuses of the lambdav command.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,    // bad flags, parse or resolve errors, frontier overflow
  kExitTop = 2,      // observe: the last observation is ⊤
  kExitNotFound = 3, // check: no derivation within the bound
  kExitFailed = 4,   // test: some suite failed
};

// Entry point of the lambdav command. Writes results to out and
// diagnostics to err.
int runCli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace lambdav
