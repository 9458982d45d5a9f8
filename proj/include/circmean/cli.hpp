#pragma once

#include <string>
#include <vector>

namespace circmean {

/// Runs the command-line tool on the given arguments (without argv[0]).
/// Returns 0 on success, 1 on input error, 2 when the uniqueness verdicts
/// of the certificate and the solver disagree.
int run_cli(const std::vector<std::string>& args);

}  // namespace circmean
