// Command-line front end. Exit codes: 0 success, 2 input error,
// 3 planner non-convergence.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace legifield::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNoConvergence = 3;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace legifield::cli
