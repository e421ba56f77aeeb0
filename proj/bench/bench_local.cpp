#include <benchmark/benchmark.h>

#include "curvel2/local_analysis.hpp"

using namespace curvel2;

namespace {

std::complex<double> bump_dbar(std::complex<double> t) {
  const double a = 1 - 4 * std::norm(t);
  return a > 0 ? -16.0 * t * a * a * a : 0.0;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void BM_CauchyDirect(benchmark::State& state) {
  const GridFunction f = GridFunction::sample(static_cast<int>(state.range(1)), bump_dbar, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_transform_direct(f, exec_of(state)));
}
BENCHMARK(BM_CauchyDirect)->ArgsProduct({{0, 1}, {32, 64}})->Unit(benchmark::kMillisecond);

void BM_CauchyFFT(benchmark::State& state) {
  const GridFunction f = GridFunction::sample(static_cast<int>(state.range(1)), bump_dbar, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_transform(f, exec_of(state)));
}
BENCHMARK(BM_CauchyFFT)->ArgsProduct({{0, 1}, {64, 128, 256}})->Unit(benchmark::kMillisecond);

void BM_Membership(benchmark::State& state) {
  const double alpha = pullback_weight_exponent(0, 0, 3);
  const WeightedDisk disk = default_disk(alpha);
  for (auto _ : state) benchmark::DoNotOptimize(quadrature_membership(-2, alpha, disk, exec_of(state)));
}
BENCHMARK(BM_Membership)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_Cutoff(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cutoff_norm(2, 1e-2, exec_of(state)));
}
BENCHMARK(BM_Cutoff)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
