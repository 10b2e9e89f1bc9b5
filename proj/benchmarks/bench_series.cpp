#include <benchmark/benchmark.h>

#include "splitgap/numerics.hpp"
#include "splitgap/rotor.hpp"

using namespace splitgap;

namespace {

void BM_CosSeriesDirectBranch(benchmark::State& state) {
  const long long truncation = state.range(0);
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cos_power_series(x, 0.5, truncation));
    x += 1e-6;  // defeat value caching without leaving the branch
  }
}
BENCHMARK(BM_CosSeriesDirectBranch)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);

void BM_CosSeriesExpansionBranch(benchmark::State& state) {
  double x = 1e-4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cos_power_series(x, 0.5));
    x += 1e-9;
  }
}
BENCHMARK(BM_CosSeriesExpansionBranch);

void BM_AsymptoticIntegral(benchmark::State& state) {
  AsymptoticOptions opts;
  opts.quad_nodes = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(asymptotic_fluctuation_integral(0.2, 0.5, opts));
  }
}
BENCHMARK(BM_AsymptoticIntegral)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

}  // namespace
