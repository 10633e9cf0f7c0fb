#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forge/bpe/tokenizer.hpp"

namespace forge::bpe {

struct TrainerOptions {
  std::size_t target_vocab_size = 0;
  std::vector<std::string> specials = default_specials();
  // Pairs seen fewer times than this are never merged.
  std::uint64_t min_pair_frequency = 2;
  // NFKC the corpus before counting.
  bool normalize = true;
  // Workers for counting; 0 = FORGE_THREADS / hardware default.
  std::size_t threads = 0;
};

enum class StopReason { target_reached, no_pairs, below_min_frequency };

std::string_view to_string(StopReason reason) noexcept;

struct TrainingStats {
  std::size_t documents = 0;
  std::uint64_t characters = 0;
  std::size_t unique_words = 0;
  std::size_t alphabet_size = 0;
  std::size_t merges = 0;
  std::size_t vocab_size = 0;
  StopReason stop = StopReason::target_reached;
};

struct TrainResult {
  Tokenizer tokenizer;
  TrainingStats stats;
};

// Distinct training words with occurrence counts, sorted by code points.
struct WordCount {
  std::u32string word;
  std::uint64_t count = 0;
};
std::vector<WordCount> count_words(std::span<const std::string> corpus, bool normalize, std::size_t threads);

// Smallest admissible target: specials + 256 fallback slots + alphabet.
std::size_t minimum_vocab_size(std::span<const std::string> corpus, const TrainerOptions& options);

// Greedy BPE: repeatedly merges the most frequent adjacent pair, ties going
// to the lexicographically smallest (left bytes, right bytes). Output is a
// pure function of (corpus order, options) regardless of thread count.
TrainResult train_bpe(std::span<const std::string> corpus, const TrainerOptions& options);

}  // namespace forge::bpe
