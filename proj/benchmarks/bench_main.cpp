#include <benchmark/benchmark.h>

#include "qnash/env.hpp"
#include "qnash/metrics.hpp"
#include "qnash/qlearn.hpp"
#include "qnash/stability.hpp"
#include "qnash/sweep.hpp"

namespace {

void BM_LhsRatio(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qnash::lhs_ratio(x));
    x += 1e-6;
  }
}
BENCHMARK(BM_LhsRatio);

void BM_TrainChain(benchmark::State& state) {
  qnash::EnvSpec env = qnash::env_from_preset("chain5");
  for (auto _ : state) {
    qnash::RunTrace run = qnash::run_training(env, static_cast<int>(state.range(0)),
                                              qnash::AlphaSource{0.3}, 0.9, 0.1, 1);
    benchmark::DoNotOptimize(run.episodes.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrainChain)->Arg(10)->Arg(100)->Arg(1000);

void BM_N1Metric(benchmark::State& state) {
  qnash::EnvSpec env = qnash::env_from_preset("chain5");
  qnash::RunTrace run =
      qnash::run_training(env, static_cast<int>(state.range(0)), qnash::AlphaSource{0.3},
                          0.9, 0.1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qnash::n1_metric(run, 0.9));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_N1Metric)->Arg(100)->Arg(1000);

void BM_GenerateSweep(benchmark::State& state) {
  qnash::SweepConfig config;
  config.n_min = 1;
  config.n_max = state.range(0);
  config.n_samples = 10;
  config.threads = 1;
  for (auto _ : state) {
    std::vector<qnash::SweepCell> cells = qnash::generate_sweep(config);
    benchmark::DoNotOptimize(cells.data());
  }
}
BENCHMARK(BM_GenerateSweep)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
