#include <benchmark/benchmark.h>

#include <numbers>

#include "qbound/chsh.hpp"
#include "qbound/expsim.hpp"

using namespace qbound;

static void BM_HermEigenvalues(benchmark::State& state) {
  const auto b = chsh::bell_operator(chsh::ThetaParam(0.4));
  for (auto _ : state) benchmark::DoNotOptimize(linalg::herm_eigenvalues(b));
}
BENCHMARK(BM_HermEigenvalues);

static void BM_SParameter(benchmark::State& state) {
  const chsh::ThetaParam theta(0.4);
  const chsh::XiParam xi(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(chsh::s_parameter(theta, xi));
}
BENCHMARK(BM_SParameter);

static void BM_SurfaceGrid(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        acc += chsh::s_parameter(chsh::ThetaParam(std::numbers::pi * i / (n - 1)),
                                 chsh::XiParam(std::numbers::pi * j / (n - 1)));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_SurfaceGrid)->Arg(31)->Arg(181)->Unit(benchmark::kMillisecond);

static void BM_HaarSample(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(chsh::haar_sample_s(chsh::ThetaParam(0.7), static_cast<std::size_t>(state.range(0)), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HaarSample)->Arg(10000);

static void BM_EstimateS(benchmark::State& state) {
  const auto pairs = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        expsim::estimate_s(chsh::ThetaParam(0.7), chsh::XiParam(0.2), pairs, expsim::NoiseModel{}, seed++));
}
BENCHMARK(BM_EstimateS)->Arg(10000)->Arg(1000000);

BENCHMARK_MAIN();
