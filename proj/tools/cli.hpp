#pragma once

#include <iosfwd>

namespace mwk::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // verification failure or unexpected internal error
  kExitUsage = 2,    // bad flags or invalid configuration / spec
  kExitIo = 3,
  kExitNumeric = 4,  // numeric or bound violation
};

/// Entry point behind the `mwk` executable; streams are injectable for tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mwk::cli
