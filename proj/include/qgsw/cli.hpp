#pragma once

#include <ostream>

namespace qgsw::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,     // I/O and other unexpected errors
    exit_config = 2,      // bad flags or configuration
    exit_numerical = 3,   // blow-up, accuracy or regime failure
    exit_acceptance = 4,  // a verify criterion failed
};

// Entry point of the qgsw tool: parses flags, dispatches to the subcommand and
// maps errors to exit codes. Does not throw.
//   qgsw [--threads N] simulate|decay|symbols|scatter|verify ...
// The worker count falls back to $QGSW_THREADS, the output root to $QGSW_OUTPUT_ROOT.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qgsw::cli
