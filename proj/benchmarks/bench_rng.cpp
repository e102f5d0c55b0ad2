#include <benchmark/benchmark.h>

#include <vector>

#include "vtorus/rng.hpp"

using namespace vtorus;

static void BM_PhiloxBlock(benchmark::State& state) {
  Philox4x32::Counter c{0, 0, 0, 0};
  const Philox4x32::Key k{1, 2};
  for (auto _ : state) {
    c = Philox4x32::block(c, k);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_PhiloxBlock);

static void BM_NormalFill(benchmark::State& state) {
  const NormalStream s(1, 1, 0, 0);
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    s.fill(-17, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NormalFill)->Arg(1024)->Arg(65536);
