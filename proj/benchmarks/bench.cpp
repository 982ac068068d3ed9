#include <benchmark/benchmark.h>

#include "sqkd/analysis.hpp"
#include "sqkd/keyrate.hpp"
#include "sqkd/sim.hpp"

namespace {

void BM_KeyRate(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const sqkd::NoiseModel model{d, 0.03, sqkd::Scenario::kDependent, sqkd::MubConvention::kPerOutcome};
  for (auto _ : state) benchmark::DoNotOptimize(sqkd::key_rate(model, n));
}
BENCHMARK(BM_KeyRate)->Args({3, 3})->Args({3, 4})->Args({4, 2})->Args({4, 5});

void BM_Threshold(benchmark::State& state) {
  sqkd::RateConfig config;
  config.dim = static_cast<int>(state.range(0));
  config.n_mubs = static_cast<int>(state.range(1));
  config.options.lambda_entropy = sqkd::LambdaEntropy::kBinarySum;
  for (auto _ : state) benchmark::DoNotOptimize(sqkd::find_threshold(config));
}
BENCHMARK(BM_Threshold)->Args({3, 3})->Args({4, 5})->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
  sqkd::ProtocolConfig config;
  config.q = 0.05;
  config.rounds = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sqkd::simulate_counts(config));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * config.rounds));
}
BENCHMARK(BM_Simulate)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
