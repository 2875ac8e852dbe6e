#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nstars::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitInsufficientData = 3;

/// Entry point of the `nstars` tool. `args` includes the program name.
/// Subcommands: derive, analytic, simulate, fit, compare.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace nstars::cli
