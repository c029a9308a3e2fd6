#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mpinv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Runs one mpinv command. `args` excludes the program name, e.g.
/// {"pinv", "--in", "a.csv", "--route", "spectral"}. Reports and matrices
/// that have no --out go to `out`, diagnostics to `err`.
///
/// Exit codes: 0 success, 1 numerical failure (no convergence, degenerate
/// separation, singular or non-Hermitian input, failed Penrose check),
/// 2 usage, parse or shape errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mpinv::cli
