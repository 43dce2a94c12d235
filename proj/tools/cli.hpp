#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lapwalk::cli {

enum ExitCode : int {
    ok = 0,
    validation_failure = 1,  ///< invalid matrix/graph, or an identity residual above tolerance
    usage_error = 2,         ///< bad arguments, unreadable or malformed files
};

/// Runs one subcommand. `args` excludes the program name. JSON goes to `out`
/// (or to --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// LAPLACE_WALK_THREADS, or 0 (auto) when unset or unparsable.
unsigned threads_from_env();

}  // namespace lapwalk::cli
