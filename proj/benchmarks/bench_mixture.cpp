#include <benchmark/benchmark.h>

#include "forge/mixture/builtin.hpp"
#include "forge/mixture/epoch.hpp"
#include "forge/mixture/sampler.hpp"

namespace {

void BM_AliasDraw(benchmark::State& state) {
  const forge::mixture::MixtureSampler sampler(forge::mixture::oxe_vla_mixture());
  forge::mixture::SamplerState s{7, 0};
  for (auto _ : state) benchmark::DoNotOptimize(sampler.next_index(s));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AliasDraw);

void BM_Histogram(benchmark::State& state) {
  const forge::mixture::MixtureSampler sampler(forge::mixture::oxe_vla_mixture());
  const auto threads = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sampler.histogram({7, 0}, 1'000'000, threads));
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_Histogram)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_EpochPlan(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(forge::mixture::epoch_plan(n, 2, 3));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * n));
}
BENCHMARK(BM_EpochPlan)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

}  // namespace
