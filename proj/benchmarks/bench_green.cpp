#include <benchmark/benchmark.h>

#include <vector>

#include "vtorus/green.hpp"

using namespace vtorus;

static void BM_EvalGd(benchmark::State& state) {
  GdOptions o;
  o.method = state.range(0) == 0 ? GdMethod::Quadrature : GdMethod::Bessel;
  const std::vector<double> x{0.03, 0.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(eval_Gd(3, x, o));
}
BENCHMARK(BM_EvalGd)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_Pairing(benchmark::State& state) {
  PairingOptions o;
  o.truncations = {1, 2, 4, 8};
  o.threads = 1;
  const auto spec = CovarianceSpectrum::parametric(2, 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(pairing_gamma_Gd(spec, o));
}
BENCHMARK(BM_Pairing)->Unit(benchmark::kMillisecond);
