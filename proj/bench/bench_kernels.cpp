// Parallel library kernels against the serial reference versions.
// Run with OMP_NUM_THREADS set to compare scaling.

#include <benchmark/benchmark.h>

#include <random>

#include "ample/homology/homology.hpp"
#include "ample/linalg/parallel.hpp"
#include "ample/reference/reference.hpp"

namespace {

using ample::linalg::IntMatrix;

IntMatrix random_matrix(std::size_t rows, std::size_t cols, long bound, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

ample::models::FiniteGroupoid bench_groupoid() { return ample::models::FiniteGroupoid::cyclic_group(6); }

void BM_MatmulParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix a = random_matrix(n, n, 99, 1), b = random_matrix(n, n, 99, 2);
  ample::linalg::set_parallel_threshold(0);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}

void BM_MatmulSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix a = random_matrix(n, n, 99, 1), b = random_matrix(n, n, 99, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ample::reference::multiply(a, b));
}

void BM_SnfParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix m = random_matrix(n, n, 9, 3);
  ample::linalg::set_parallel_threshold(0);
  for (auto _ : state) benchmark::DoNotOptimize(ample::linalg::smith_normal_form(m));
}

void BM_SnfSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix m = random_matrix(n, n, 9, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ample::reference::smith_normal_form(m));
}

void BM_NerveParallel(benchmark::State& state) {
  const auto g = bench_groupoid();
  ample::linalg::set_parallel_threshold(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(ample::models::nerve_levels(g, static_cast<std::size_t>(state.range(0))));
}

void BM_NerveSerial(benchmark::State& state) {
  const auto g = bench_groupoid();
  for (auto _ : state)
    benchmark::DoNotOptimize(ample::reference::nerve_level(g, static_cast<std::size_t>(state.range(0))));
}

void BM_BoundaryParallel(benchmark::State& state) {
  const auto g = bench_groupoid();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto levels = ample::models::nerve_levels(g, n);
  ample::linalg::set_parallel_threshold(0);
  for (auto _ : state) benchmark::DoNotOptimize(ample::homology::bar_boundary(g, levels[n], levels[n - 1]));
}

void BM_BoundarySerial(benchmark::State& state) {
  const auto g = bench_groupoid();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto levels = ample::models::nerve_levels(g, n);
  for (auto _ : state) benchmark::DoNotOptimize(ample::reference::bar_boundary(g, levels[n], levels[n - 1]));
}

}  // namespace

BENCHMARK(BM_MatmulParallel)->Arg(32)->Arg(96);
BENCHMARK(BM_MatmulSerial)->Arg(32)->Arg(96);
BENCHMARK(BM_SnfParallel)->Arg(16)->Arg(40);
BENCHMARK(BM_SnfSerial)->Arg(16)->Arg(40);
BENCHMARK(BM_NerveParallel)->Arg(4)->Arg(6);
BENCHMARK(BM_NerveSerial)->Arg(4)->Arg(6);
BENCHMARK(BM_BoundaryParallel)->Arg(4)->Arg(5);
BENCHMARK(BM_BoundarySerial)->Arg(4)->Arg(5);

BENCHMARK_MAIN();
