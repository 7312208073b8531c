#pragma once

#include <iosfwd>

namespace redlab::cli {

// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kResource = 3,
  kVerifyFailed = 4,
};

// Entry point behind the `redlab` executable. `in` feeds distributions read
// from stdin.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace redlab::cli
