#pragma once

#include <exception>

namespace qwalk {

/// Exit code for a failure escaping a CLI run: 3 for numerical failures
/// (NotHermitian, ConvergenceFailure, NumericalCorruption, BoundaryOverflow),
/// 2 for everything else (configuration and usage errors).
int exit_code_for(const std::exception& e);

/// Full command-line entry point; returns the process exit code (0 success,
/// 2 invalid configuration, 3 numerical failure).
int cli_main(int argc, const char* const* argv);

}  // namespace qwalk
