// Serial reference vs OpenMP batch path for multi-seed sweeps.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "iqp/bench.hpp"

namespace {

std::vector<std::uint64_t> seed_list(int count) {
  std::vector<std::uint64_t> seeds;
  for (int s = 1; s <= count; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
  return seeds;
}

void BM_SweepSeeds(benchmark::State& state, iqp::Execution exec) {
  const int n = static_cast<int>(state.range(0));
  const auto seeds = seed_list(static_cast<int>(state.range(1)));
  iqp::SweepOptions opts;
  opts.ladder_cap = 6;
  for (auto _ : state) {
    auto reports = iqp::sweep_seeds(1, n, seeds, iqp::Algorithm::B, opts, exec);
    benchmark::DoNotOptimize(reports);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(seeds.size()));
}

void BM_CompareAB(benchmark::State& state, iqp::Execution exec) {
  const auto seeds = seed_list(static_cast<int>(state.range(1)));
  iqp::SweepOptions opts;
  opts.ladder_cap = 4;
  for (auto _ : state) {
    auto sum = iqp::compare_ab(1, static_cast<int>(state.range(0)), seeds, opts, exec);
    benchmark::DoNotOptimize(sum);
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_SweepSeeds, serial, iqp::Execution::serial)->Args({10, 8})->Args({20, 8})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SweepSeeds, parallel, iqp::Execution::parallel)->Args({10, 8})->Args({20, 8})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CompareAB, serial, iqp::Execution::serial)->Args({10, 8})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CompareAB, parallel, iqp::Execution::parallel)->Args({10, 8})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
