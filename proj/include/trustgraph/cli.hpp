#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trustgraph {

/// Exit codes of run_cli().
enum ExitCode : int {
    EXIT_OK = 0,
    EXIT_INVALID_INPUT = 1,  ///< graph parse or validation failure
    EXIT_USAGE = 2,          ///< bad flags, unknown seed, out-of-range parameter
    EXIT_NOT_CONVERGED = 3,  ///< iteration cap hit under --strict
};

/**
 * Runs the trustgraph command line. @a args excludes the program name.
 * Artifacts go to @a out (or the --output file), diagnostics to @a err.
 */
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace trustgraph
