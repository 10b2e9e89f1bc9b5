#include <benchmark/benchmark.h>

#include "splitgap/ed.hpp"
#include "splitgap/instanton.hpp"
#include "splitgap/rotor.hpp"
#include "splitgap/toy.hpp"

using namespace splitgap;

namespace {

void BM_LanczosSplitting(benchmark::State& state) {
  ModelParams p;
  p.coupling = CouplingKind::AllToAll;
  p.L = static_cast<int>(state.range(0));
  p.lambda = 1.0;
  p.alpha = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(splitting_ed(p, {}).delta);
  }
}
BENCHMARK(BM_LanczosSplitting)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ActionMinimize(benchmark::State& state) {
  ModelParams p;
  p.coupling = CouplingKind::AllToAll;
  p.L = 64;
  p.lambda = 1.0;
  p.alpha = 0.5;
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize_reduced_action(p, 10.0, grid).action.total);
  }
}
BENCHMARK(BM_ActionMinimize)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_AppendixDRoots(benchmark::State& state) {
  RotorParams p;
  p.base.coupling = CouplingKind::PeriodicPowerLaw;
  p.base.L = 4;
  p.base.lambda = 0.2;
  p.base.alpha = 0.5;
  p.g = 0.1;
  const int nmax = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(appendix_d_verify(p, 50.0, nmax).rel_error);
  }
}
BENCHMARK(BM_AppendixDRoots)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ToySpectrumEnumeration(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(toy_spectrum(OperatorChoice::sigma_xx(), L, +1).p.size());
  }
}
BENCHMARK(BM_ToySpectrumEnumeration)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);

}  // namespace
