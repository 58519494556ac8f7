#pragma once

#include <string>
#include <vector>

namespace vqasvm {

/// Runs the command-line tool in-process. argv excludes the program name.
/// Returns the exit status; failures print a one-line JSON error object to
/// stderr.
int cli_run(const std::vector<std::string>& argv);

} // namespace vqasvm
