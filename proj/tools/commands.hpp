#pragma once

#include <iosfwd>

namespace omqm::cli {

/// Parses argv, runs one subcommand, writes its files under the output
/// directory and prints the primary output to `out` and a one-line summary
/// to `err`. Returns 0 on success (claim verdicts never affect it), 1 on an
/// evaluation error and 2 on a usage error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace omqm::cli
