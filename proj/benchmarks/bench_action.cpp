#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "forge/action/chunk.hpp"
#include "forge/action/jitter.hpp"
#include "forge/action/norm.hpp"

namespace {

forge::action::Trajectory wave(std::size_t steps, std::size_t dims) {
  std::vector<double> v(steps * dims);
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t d = 0; d < dims; ++d) v[t * dims + d] = std::sin(0.01 * static_cast<double>(t * (d + 1)));
  }
  return forge::action::Trajectory(steps, dims, std::move(v), 0.05);
}

void BM_NormalizeChunk(benchmark::State& state) {
  const auto traj = wave(10'000, 7);
  const std::vector<forge::action::Trajectory> fit = {traj};
  const auto stats = forge::action::fit_norm_stats(fit);
  for (auto _ : state) {
    auto chunks = forge::action::chunk_trajectory(forge::action::normalize(traj, stats), 8, 8);
    benchmark::DoNotOptimize(chunks.data());
  }
}
BENCHMARK(BM_NormalizeChunk)->Unit(benchmark::kMicrosecond);

void BM_Jitter(benchmark::State& state) {
  const auto traj = wave(10'000, 7);
  for (auto _ : state) benchmark::DoNotOptimize(forge::action::jitter(traj));
}
BENCHMARK(BM_Jitter)->Unit(benchmark::kMicrosecond);

}  // namespace
