#include "forge/bind/handles.hpp"

#include "forge/bpe/io.hpp"
#include "forge/mixture/spec.hpp"

namespace forge::bind {

BoundTokenizer bind_tokenizer(const std::filesystem::path& vocab_path) {
  return BoundTokenizer(bpe::load_tokenizer(vocab_path));
}

BoundSampler bind_sampler(const std::filesystem::path& spec_path, std::uint64_t seed) {
  return BoundSampler(mixture::load_mixture_spec(spec_path), seed);
}

}  // namespace forge::bind
