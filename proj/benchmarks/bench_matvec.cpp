#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "splitgap/hamiltonian.hpp"

using namespace splitgap;

namespace {

ModelParams chain(int L) {
  ModelParams p;
  p.coupling = CouplingKind::AllToAll;
  p.L = L;
  p.lambda = 1.0;
  p.alpha = 0.5;
  return p;
}

void BM_MatvecSingleThread(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  ChainHamiltonian ham(chain(L), ParitySector::plus());
  std::vector<double> v(ham.dimension()), out(ham.dimension());
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto& x : v) x = dist(rng);
  for (auto _ : state) {
    ham.apply(v, out, 1);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(ham.dimension()));
}
BENCHMARK(BM_MatvecSingleThread)->Arg(12)->Arg(14)->Arg(16);

void BM_MatvecThreaded(benchmark::State& state) {
  ChainHamiltonian ham(chain(16), ParitySector::plus());
  std::vector<double> v(ham.dimension()), out(ham.dimension());
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto& x : v) x = dist(rng);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ham.apply(v, out, threads);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_MatvecThreaded)->Arg(1)->Arg(2)->Arg(4);

void BM_DiagonalBuild(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ChainHamiltonian ham(chain(L), ParitySector::plus());
    benchmark::DoNotOptimize(ham.dimension());
  }
}
BENCHMARK(BM_DiagonalBuild)->Arg(12)->Arg(14);

}  // namespace
