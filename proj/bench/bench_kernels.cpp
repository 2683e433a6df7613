// Serial reference kernels against their OpenMP versions on exact rational and
// integer data.

#include <benchmark/benchmark.h>

#include "sbsplit/linalg.hpp"
#include "sbsplit/rng.hpp"

using namespace sbsplit;

namespace {

QMatrix random_rat_matrix(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  QMatrix m(n, n);
  for (auto& x : m.data()) x = Rat(rng.uniform(-1000, 1000), rng.uniform(1, 99));
  return m;
}

std::vector<std::vector<Int>> random_int_rows(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
  for (auto& row : a)
    for (auto& x : row) x = rng.uniform(-1000000, 1000000);
  return a;
}

template <bool Parallel>
void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  QMatrix a = random_rat_matrix(n, 1), b = random_rat_matrix(n, 2);
  for (auto _ : state) {
    QMatrix c = Parallel ? kernels::matmul_omp(a, b) : kernels::matmul_serial(a, b);
    benchmark::DoNotOptimize(c);
  }
}

template <bool Parallel>
void BM_Eliminate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  QMatrix m = random_rat_matrix(n, 3);
  Rat inv = 1 / m(0, 0);
  for (std::size_t j = 0; j < n; ++j) m(0, j) *= inv;
  for (auto _ : state) {
    QMatrix w = m;
    if (Parallel)
      kernels::eliminate_column_omp(w, 0, 0);
    else
      kernels::eliminate_column_serial(w, 0, 0);
    benchmark::DoNotOptimize(w);
  }
}

template <bool Parallel>
void BM_Bareiss(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a0 = random_int_rows(n, 4);
  for (auto _ : state) {
    auto a = a0;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (Parallel)
        kernels::bareiss_step_omp(a, k, k, prev);
      else
        kernels::bareiss_step_serial(a, k, k, prev);
      prev = a[k][k];
    }
    benchmark::DoNotOptimize(a);
  }
}

}  // namespace

BENCHMARK(BM_Matmul<false>)->Arg(16)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Matmul<true>)->Arg(16)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Eliminate<false>)->Arg(64)->Arg(160)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Eliminate<true>)->Arg(64)->Arg(160)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Bareiss<false>)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Bareiss<true>)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
