// Serial reference vs OpenMP sweep on a reduced fig2 grid, plus the
// eigensolver at the sizes the sweeps hit.

#include <benchmark/benchmark.h>

#include <random>

#include "jtent/eigensolver.hpp"
#include "jtent/sweeps.hpp"

namespace {

jtent::SweepSpec reduced_fig2() {
  auto spec = jtent::builtin_sweep("fig2");
  spec.grid = {-1.6, 1.6, 0.4};
  spec.verify_increment = 0;
  return spec;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = reduced_fig2();
  for (auto _ : state) benchmark::DoNotOptimize(jtent::run_sweep_serial(spec));
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

void BM_SweepParallel(benchmark::State& state) {
  const auto spec = reduced_fig2();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jtent::run_sweep_parallel(spec, jobs));
}
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_EigHermitian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  jtent::CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = {g(rng), g(rng)};
      h(j, i) = std::conj(h(i, j));
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(jtent::eig_hermitian(h));
}
BENCHMARK(BM_EigHermitian)->Arg(50)->Arg(200)->Arg(392)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
