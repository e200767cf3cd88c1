#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stutter::cli {

/// Runs the command line `args` (without the program name) and returns the
/// exit status: 0 equivalent / success, 1 inequivalent or failed audit laws,
/// 2 usage, input or I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stutter::cli
