#include <benchmark/benchmark.h>

#include "mpinv/decomp.hpp"
#include "mpinv/eigen.hpp"
#include "mpinv/pinv.hpp"
#include "random_matrices.hpp"

namespace {

using mpinv::ComplexMatrix;

// Rank-deficient m x (m/2 + 3) input of rank m/3 + 1, fixed seed.
ComplexMatrix bench_input(std::size_t m) {
  mpinv::testing::MatrixGen gen(42 + m);
  return gen.low_rank(m, m / 2 + 3, m / 3 + 1);
}

template <ComplexMatrix (*Route)(const ComplexMatrix&, const mpinv::PinvOptions&)>
void BM_route(benchmark::State& state) {
  const ComplexMatrix a = bench_input(static_cast<std::size_t>(state.range(0)));
  const mpinv::PinvOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(Route(a, opts));
}

ComplexMatrix polynomial_cols(const ComplexMatrix& a, const mpinv::PinvOptions& opts) {
  return mpinv::pinv_polynomial(a, opts);
}

void BM_hermitian_eig(benchmark::State& state) {
  mpinv::testing::MatrixGen gen(7);
  const ComplexMatrix h = gen.hermitian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mpinv::hermitian_eig(h));
}

void BM_svd_rect(benchmark::State& state) {
  const ComplexMatrix a = bench_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mpinv::svd_rect(a));
}

void BM_tikhonov_iterate(benchmark::State& state) {
  const ComplexMatrix a = bench_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mpinv::tikhonov_iterate(a, 1e-6));
}

void BM_polynomial_two_values(benchmark::State& state) {
  // Two distinct Gram eigenvalues keep the Lagrange route well inside its
  // amplification limit at every size.
  const auto n = static_cast<std::size_t>(state.range(0));
  mpinv::testing::MatrixGen gen(9);
  std::vector<double> sigmas(n / 2, 1.0);
  sigmas.resize(n - 1, 2.0);
  const ComplexMatrix a = mpinv::matmul(mpinv::matmul(gen.unitary(n), gen.with_exact_kernel(n, n, sigmas)),
                                        gen.unitary(n));
  const mpinv::PinvOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(polynomial_cols(a, opts));
}

}  // namespace

BENCHMARK(BM_route<mpinv::pinv_spectral>)->Arg(8)->Arg(16)->Arg(32)->Arg(48);
BENCHMARK(BM_route<mpinv::pinv_via_AstarA>)->Arg(8)->Arg(16)->Arg(32)->Arg(48);
BENCHMARK(BM_route<mpinv::pinv_tikhonov>)->Arg(8)->Arg(16)->Arg(32)->Arg(48);
BENCHMARK(BM_route<mpinv::pinv_svd>)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_polynomial_two_values)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_hermitian_eig)->Arg(8)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_svd_rect)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_tikhonov_iterate)->Arg(8)->Arg(16)->Arg(32)->Arg(48);
BENCHMARK_MAIN();
