#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "qdetect/kernels.hpp"
#include "qdetect/sdp.hpp"

using namespace qdetect;
using namespace fixtures;

namespace {

struct SchurCase {
  std::vector<ComplexMatrix> orbit;
  std::vector<ComplexMatrix> images;
  std::vector<ComplexMatrix> primal;
  std::vector<ComplexMatrix> dual_inverse;
  std::vector<double> out;

  SchurCase(std::size_t n, std::size_t blocks) {
    Rng rng(7);
    orbit.push_back(ComplexMatrix::identity(n));
    images = kernels::hermitian_basis(n);
    for (std::size_t k = 0; k < blocks; ++k) {
      primal.push_back(HermitianMatrix::outer(gaussian_matrix(n, n, rng)).matrix());
      dual_inverse.push_back(HermitianMatrix::outer(gaussian_matrix(n, n, rng)).matrix());
    }
    out.resize(n * n * n * n);
  }

  kernels::SchurOperands operands() const { return {orbit, images, primal, dual_inverse}; }
};

void BM_SchurSerial(benchmark::State& state) {
  SchurCase c(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    kernels::assemble_schur_serial(c.operands(), c.out);
    benchmark::DoNotOptimize(c.out.data());
  }
}

void BM_SchurParallel(benchmark::State& state) {
  SchurCase c(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    kernels::assemble_schur_parallel(c.operands(), c.out);
    benchmark::DoNotOptimize(c.out.data());
  }
}

void BM_SolveOptimal(benchmark::State& state) {
  Rng rng(11);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<ComplexMatrix> factors;
  for (std::size_t i = 0; i < 2 * n; ++i) factors.push_back(random_mixed_factor(n, 2, rng));
  const Ensemble e = Ensemble::from_factors(factors, random_priors(2 * n, rng));
  SolverOptions opts;
  opts.parallel_kernels = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_optimal(e, opts).p_correct);
}

}  // namespace

BENCHMARK(BM_SchurSerial)->Args({4, 8})->Args({8, 16})->Args({12, 24})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SchurParallel)->Args({4, 8})->Args({8, 16})->Args({12, 24})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveOptimal)->Args({6, 0})->Args({6, 1})->Args({10, 0})->Args({10, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
