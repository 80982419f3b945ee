#pragma once

#include <iosfwd>

namespace ordopt::cli {

/// Runs the ordopt command line. Results go to `out`, diagnostics to `err`.
/// Returns 0 on success, 2 for usage and validation errors, 3 when a
/// numerical method fails.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ordopt::cli
