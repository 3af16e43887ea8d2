#include <benchmark/benchmark.h>

#include "mwk/data.hpp"
#include "mwk/engine.hpp"

namespace {

const mwk::Dataset& synthetic() {
  static const mwk::Dataset data =
      mwk::data::range_normalise(mwk::data::generate(mwk::data::SyntheticSpec{}).dataset).dataset;
  return data;
}

// One mwk-means run on the default 1000 x 8 synthetic dataset.
void BM_Run(benchmark::State& state) {
  mwk::MwkConfig config;
  config.k = 3;
  config.p = static_cast<double>(state.range(0)) / 10.0;
  config.restarts = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mwk::run(synthetic(), config));
    ++config.seed;
  }
}

void BM_ClassicKMeans(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(mwk::run_classic_kmeans(synthetic(), 3, seed++));
}

}  // namespace

BENCHMARK(BM_Run)->Arg(11)->Arg(15)->Arg(20)->Arg(50)->ArgName("p_x10")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassicKMeans)->Unit(benchmark::kMillisecond);
