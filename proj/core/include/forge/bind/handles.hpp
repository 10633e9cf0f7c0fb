#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forge/bpe/tokenizer.hpp"
#include "forge/mixture/sampler.hpp"

// Handle types a foreign-function layer wraps. They only forward to the core.
namespace forge::bind {

// Immutable; safe to share between threads.
class BoundTokenizer {
 public:
  explicit BoundTokenizer(bpe::Tokenizer tok) : tok_(std::make_shared<const bpe::Tokenizer>(std::move(tok))) {}

  std::vector<std::uint32_t> encode(std::string_view text) const { return tok_->encode(text); }
  std::string decode(std::span<const std::uint32_t> ids) const { return tok_->decode(ids).text; }
  std::size_t vocab_size() const noexcept { return tok_->vocab().size(); }
  const bpe::Tokenizer& tokenizer() const noexcept { return *tok_; }

 private:
  std::shared_ptr<const bpe::Tokenizer> tok_;
};

// Stateful: one per consumer.
class BoundSampler {
 public:
  BoundSampler(mixture::MixtureSpec spec, std::uint64_t seed) : sampler_(std::move(spec), seed) {}

  std::size_t next() noexcept { return sampler_.next_index(); }
  const std::string& next_name() { return sampler_.next(); }
  std::string name(std::size_t index) const { return sampler_.sampler().spec().name(index); }
  mixture::SamplerState state() const noexcept { return sampler_.state(); }
  void restore(const mixture::SamplerState& s) noexcept { sampler_.restore(s); }

 private:
  mixture::SeededSampler sampler_;
};

// Merges are read from `<vocab>.merges`. Errors are the core's ParseError / IoError.
BoundTokenizer bind_tokenizer(const std::filesystem::path& vocab_path);
BoundSampler bind_sampler(const std::filesystem::path& spec_path, std::uint64_t seed);

}  // namespace forge::bind
