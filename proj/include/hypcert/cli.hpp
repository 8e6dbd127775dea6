#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypcert {

/// Runs the command line `args` (without the program name).
/// Exit codes: 0 proved or valid, 2 undetermined or invalid, 1 usage or
/// domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypcert
