#include <benchmark/benchmark.h>

#include <random>

#include "mwk/theory.hpp"
#include "mwk/weighting.hpp"

namespace {

mwk::DispersionMatrix dispersions(std::size_t k, std::size_t m) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  mwk::DispersionMatrix dm{mwk::Matrix(k, m)};
  for (double& d : dm.d.flat()) d = std::pow(10.0, u(gen));
  return dm;
}

void BM_UpdateWeights(benchmark::State& state) {
  const auto dm = dispersions(8, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mwk::update_weights(dm, 1.5));
}

void BM_ObjectiveBounds(benchmark::State& state) {
  const auto dm = dispersions(8, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mwk::theory::objective_via_power_means(dm, 1.5));
    benchmark::DoNotOptimize(mwk::theory::objective_bounds(dm, 1.5));
  }
}

}  // namespace

BENCHMARK(BM_UpdateWeights)->Arg(8)->Arg(64)->Arg(512);
BENCHMARK(BM_ObjectiveBounds)->Arg(8)->Arg(64)->Arg(512);
