#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "mpinv/matrix.hpp"
#include "mpinv/pinv.hpp"

namespace mpinv::cli {

// First-kind equation  int_0^1 k(x, y) u(y) dy = f(x)  on a uniform grid.

enum class FredholmKernel { kGaussian };  // exp(-(x - y)^2)
enum class FredholmSolution { kSine, kZero };  // sin(pi y), 0

FredholmKernel parse_kernel(std::string_view name);
FredholmSolution parse_solution(std::string_view name);

struct FredholmOptions {
  FredholmKernel kernel = FredholmKernel::kGaussian;
  FredholmSolution solution = FredholmSolution::kSine;
  std::size_t grid_n = 32;
  /// Only the mu schedule is used.
  PinvOptions pinv{};
};

struct FredholmStep {
  double mu = 0.0;
  double error = 0.0;     // ||u_mu - u_true|| / ||u_true||, absolute when u_true = 0
  double residual = 0.0;  // ||A u_mu - f||
};

struct FredholmResult {
  ComplexMatrix a;       // A_ij = w_j k(x_i, y_j), trapezoid weights w_j
  ComplexMatrix u_true;  // grid_n x 1
  ComplexMatrix f;       // A u_true
  std::vector<FredholmStep> steps;
  ComplexMatrix solution;  // u at the last mu of the schedule
};

/// Regularized solutions u_mu = A^* (A A^* + mu)^{-1} f for every mu of the
/// schedule. A is numerically singular for smooth kernels, so the result is
/// read at the smallest mu rather than extrapolated to mu = 0.
/// Throws std::invalid_argument for grid_n < 8.
FredholmResult fredholm_demo(const FredholmOptions& opts = {});

}  // namespace mpinv::cli
