// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "shrinklab/proj_distribution.hpp"
#include "shrinklab/shrink.hpp"
#include "shrinklab/size_table.hpp"

namespace {

using namespace shrinklab;

void BM_SizeTable(benchmark::State& state) {
  SizeTableOptions opt;
  opt.parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_size_table(static_cast<int>(state.range(0)), opt));
}
BENCHMARK(BM_SizeTable)->Args({3, 0})->Args({3, 1})->Args({4, 0})->Args({4, 1})->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  cached_size_table(4);  // built once, outside the timed loop
  const Formula phi = parity_formula(3);
  const ProjDistribution d = p_random_restriction(8, make_rational(1, 4));
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(expected_L_mc(phi, d, 2000, 1, parallel));
}
BENCHMARK(BM_MonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
