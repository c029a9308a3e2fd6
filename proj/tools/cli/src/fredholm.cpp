#include "mpinv/cli/fredholm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mpinv::cli {

namespace {

double kernel_value(FredholmKernel kernel, double x, double y) {
  switch (kernel) {
    case FredholmKernel::kGaussian:
      break;
  }
  return std::exp(-(x - y) * (x - y));
}

double solution_value(FredholmSolution solution, double y) {
  return solution == FredholmSolution::kSine ? std::sin(std::numbers::pi * y) : 0.0;
}

}  // namespace

FredholmKernel parse_kernel(std::string_view name) {
  if (name == "gaussian") return FredholmKernel::kGaussian;
  throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

FredholmSolution parse_solution(std::string_view name) {
  if (name == "sine") return FredholmSolution::kSine;
  if (name == "zero") return FredholmSolution::kZero;
  throw std::invalid_argument("unknown solution '" + std::string(name) + "'");
}

FredholmResult fredholm_demo(const FredholmOptions& opts) {
  if (opts.grid_n < 8) {
    throw std::invalid_argument("fredholm_demo: grid_n must be at least 8, got " + std::to_string(opts.grid_n));
  }
  opts.pinv.validate();
  const std::size_t n = opts.grid_n;
  const double h = 1.0 / static_cast<double>(n - 1);

  FredholmResult out;
  out.a = ComplexMatrix(n, n);
  out.u_true = ComplexMatrix(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) * h;
    out.u_true(i, 0) = solution_value(opts.solution, x);
    for (std::size_t j = 0; j < n; ++j) {
      const double y = static_cast<double>(j) * h;
      const double w = (j == 0 || j == n - 1) ? h / 2 : h;
      out.a(i, j) = w * kernel_value(opts.kernel, x, y);
    }
  }
  out.f = matmul(out.a, out.u_true);

  const double truth = frobenius_norm(out.u_true);
  const double norm = frobenius_norm(out.a);
  double mu = opts.pinv.mu.mu0 > 0.0 ? opts.pinv.mu.mu0 : 1e-2 * norm * norm;
  for (int k = 0; k < opts.pinv.mu.max_steps; ++k, mu *= opts.pinv.mu.factor) {
    ComplexMatrix u = matmul(tikhonov_iterate(out.a, mu), out.f);
    const double err = distance(u, out.u_true);
    out.steps.push_back({mu, truth > 0.0 ? err / truth : err, distance(matmul(out.a, u), out.f)});
    out.solution = std::move(u);
  }
  return out;
}

}  // namespace mpinv::cli
