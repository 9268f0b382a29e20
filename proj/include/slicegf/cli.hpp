#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slicegf {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitInput = 2,
    kExitFailure = 3, ///< computational or invariant failure
};

/// Runs the `slicegf` command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace slicegf
