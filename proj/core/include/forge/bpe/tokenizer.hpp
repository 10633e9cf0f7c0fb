#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "forge/bpe/vocabulary.hpp"

namespace forge::bpe {

struct Unit;

struct EncodeOptions {
  // NFKC before encoding. Off by default: normalization is lossy and would
  // break decode(encode(x)) == x.
  bool normalize = false;
};

struct Decoded {
  std::string text;
  // Set when fallback bytes did not form valid UTF-8 and U+FFFD was substituted.
  bool lossy = false;
};

// Immutable (Vocabulary, MergeRuleList) pair. encode/decode are pure and
// safe to call concurrently.
class Tokenizer {
 public:
  Tokenizer() = default;
  Tokenizer(Vocabulary vocab, MergeRuleList merges);

  const Vocabulary& vocab() const noexcept { return vocab_; }
  const MergeRuleList& merges() const noexcept { return merges_; }

  // Applies the lowest-rank merge (leftmost on ties) until none applies.
  // Characters missing from the vocabulary become byte-fallback ids, so
  // encoding never fails.
  TokenSequence encode(std::string_view text, EncodeOptions options = {}) const;
  void encode_into(std::string_view text, TokenSequence& out, EncodeOptions options = {}) const;

  // Throws ValidationError for an out-of-range id. Specials decode to nothing.
  Decoded decode(std::span<const TokenId> ids) const;

  // Same tokens, merge list cut to its first `count` rules.
  Tokenizer with_merge_prefix(std::size_t count) const;

  bool operator==(const Tokenizer& other) const noexcept {
    return vocab_ == other.vocab_ && merges_ == other.merges_;
  }

 private:
  void encode_word(std::string_view text, std::span<const Unit> word, TokenSequence& out) const;

  Vocabulary vocab_;
  MergeRuleList merges_;
};

}  // namespace forge::bpe
