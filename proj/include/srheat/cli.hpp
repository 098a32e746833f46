#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srheat {

// Exit codes shared by the command line tool and its callers.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,          // bad arguments or malformed input files
    kExitNumerical = 3,      // a solver or quadrature failed to converge
    kExitNotCertified = 4,   // bracket-generating condition not certified
};

// Runs one command line invocation. `args` excludes the program name.
// Normal output goes to `out`, diagnostics to `err`; the return value is the
// process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srheat
