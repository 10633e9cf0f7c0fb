#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "forge/bpe/trainer.hpp"

namespace {

std::vector<std::string> synthetic_corpus(std::size_t docs, std::size_t words) {
  static const char* kWords[] = {"the", "robot", "arm", "moves", "to", "grasp", "a", "red", "block", "then",
                                 "places", "it", "on", "blue", "plate", "near", "left", "edge", "of", "table"};
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(kWords) - 1);
  std::vector<std::string> out(docs);
  for (auto& d : out) {
    for (std::size_t w = 0; w < words; ++w) {
      if (w) d += ' ';
      d += kWords[pick(rng)];
    }
  }
  return out;
}

void BM_Train(benchmark::State& state) {
  const auto corpus = synthetic_corpus(static_cast<std::size_t>(state.range(0)), 40);
  forge::bpe::TrainerOptions o;
  o.target_vocab_size = 600;
  for (auto _ : state) benchmark::DoNotOptimize(forge::bpe::train_bpe(corpus, o));
}
BENCHMARK(BM_Train)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Encode(benchmark::State& state) {
  const auto corpus = synthetic_corpus(2000, 40);
  forge::bpe::TrainerOptions o;
  o.target_vocab_size = 600;
  const auto tok = forge::bpe::train_bpe(corpus, o).tokenizer;
  std::size_t bytes = 0;
  forge::bpe::TokenSequence ids;
  for (auto _ : state) {
    for (const auto& d : corpus) {
      ids.clear();
      tok.encode_into(d, ids);
      bytes += d.size();
    }
    benchmark::DoNotOptimize(ids.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_Encode)->Unit(benchmark::kMillisecond);

}  // namespace
