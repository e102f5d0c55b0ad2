#include <benchmark/benchmark.h>

#include "vtorus/simulate.hpp"

using namespace vtorus;

static SimulationConfig config(int n_max) {
  SimulationConfig c;
  c.d = 1;
  c.n_max = n_max;
  c.time_grid = {1.0, 0.01, 16};
  c.conv_dt = 1e-3;
  c.n_paths = 64;
  c.threads = 1;
  return c;
}

static void BM_SimulateConvolution(benchmark::State& state) {
  const auto spec = CovarianceSpectrum::parametric(1, 1.0, 1.0);
  const auto c = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_convolution(Kernel::exp(), spec, c));
}
BENCHMARK(BM_SimulateConvolution)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_SimulateExact(benchmark::State& state) {
  const auto spec = CovarianceSpectrum::parametric(1, 1.0, 1.0);
  const auto c = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_exact_gaussian(Kernel::exp(), spec, c));
}
BENCHMARK(BM_SimulateExact)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
