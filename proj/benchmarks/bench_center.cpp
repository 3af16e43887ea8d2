#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mwk/geometry.hpp"

namespace {

std::vector<double> samples(std::size_t n) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> dist;
  std::vector<double> out(n);
  for (double& x : out) x = dist(gen);
  return out;
}

void BM_MinkowskiCenter(benchmark::State& state) {
  const auto s = samples(static_cast<std::size_t>(state.range(0)));
  const double p = static_cast<double>(state.range(1)) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mwk::minkowski_center(s, p, 1e-10));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_MinkowskiCenter)
    ->ArgsProduct({{10, 100, 1000}, {11, 15, 20, 50}})
    ->ArgNames({"n", "p_x10"});
