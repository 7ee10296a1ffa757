#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pardyn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitCounterexample = 2;

/// Runs one command (arguments without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pardyn::cli
