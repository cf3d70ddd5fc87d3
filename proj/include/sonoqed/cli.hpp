#pragma once

#include <ostream>

namespace sonoqed {

enum ExitCode : int { exit_ok = 0, exit_validation = 1, exit_io = 2, exit_numerical = 3 };

// Whole command line in, exit code out. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sonoqed
