#include <benchmark/benchmark.h>

#include "vtorus/resolvent.hpp"

using namespace vtorus;

static void BM_ResolventDirect(benchmark::State& state) {
  const auto k = Kernel::texp();
  const double dt = 1e-2;
  ResolventOptions o;
  o.scheme = ResolventScheme::Trapezoidal;
  o.direct_limit = 1u << 30;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_resolvent(k, -4.0, dt, dt * static_cast<double>(state.range(0)), o));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ResolventDirect)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

static void BM_ResolventFft(benchmark::State& state) {
  const auto k = Kernel::texp();
  const double dt = 1e-2;
  ResolventOptions o;
  o.scheme = ResolventScheme::Trapezoidal;
  o.direct_limit = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_resolvent(k, -4.0, dt, dt * static_cast<double>(state.range(0)), o));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ResolventFft)->RangeMultiplier(4)->Range(256, 65536)->Complexity();

static void BM_ResolventRichardson(benchmark::State& state) {
  const auto k = Kernel::exp();
  for (auto _ : state) benchmark::DoNotOptimize(solve_resolvent(k, -25.0, 1e-3, 10.0));
}
BENCHMARK(BM_ResolventRichardson)->Unit(benchmark::kMillisecond);
