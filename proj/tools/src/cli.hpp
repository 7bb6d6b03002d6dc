#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace catgraph::cli {

enum ExitCode : int {
    kOk = 0,
    kMismatch = 1,
    kInputError = 2,
    kAbort = 3,
};

/// Runs one command line (argv[0] is the program name) and returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace catgraph::cli
