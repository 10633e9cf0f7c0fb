#include "forge/extend/efficiency.hpp"

#include <vector>

#include "forge/error.hpp"
#include "forge/parallel.hpp"
#include "forge/utf8.hpp"

namespace forge::extend {

Report EfficiencyReport::to_report() const {
  Report r;
  r.add("documents", documents)
      .add("corpus_chars", corpus_chars)
      .add("tokens", tokens)
      .add("fallback_tokens", fallback_tokens)
      .add("tokens_per_char", tokens_per_char)
      .add("chars_per_token", chars_per_token)
      .add("fallback_fraction", fallback_fraction);
  return r;
}

EfficiencyReport encoding_efficiency(const bpe::Tokenizer& tok, std::span<const std::string> corpus,
                                     std::size_t threads) {
  if (corpus.empty()) throw ValidationError("efficiency corpus is empty");
  threads = resolve_threads(threads);
  struct Partial {
    std::uint64_t chars = 0, tokens = 0, fallback = 0;
  };
  std::vector<Partial> partial(threads);
  parallel_for(corpus.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t w) {
    Partial& p = partial[w];
    bpe::TokenSequence ids;
    for (std::size_t d = begin; d < end; ++d) {
      p.chars += utf8::count_code_points(corpus[d]);
      ids.clear();
      tok.encode_into(corpus[d], ids);
      p.tokens += ids.size();
      for (auto id : ids) p.fallback += tok.vocab().is_byte(id) ? 1 : 0;
    }
  });
  EfficiencyReport r;
  r.documents = corpus.size();
  for (const auto& p : partial) {
    r.corpus_chars += p.chars;
    r.tokens += p.tokens;
    r.fallback_tokens += p.fallback;
  }
  if (r.corpus_chars == 0) throw ValidationError("efficiency corpus contains no characters");
  r.tokens_per_char = static_cast<double>(r.tokens) / static_cast<double>(r.corpus_chars);
  r.chars_per_token = static_cast<double>(r.corpus_chars) / static_cast<double>(r.tokens);
  r.fallback_fraction = static_cast<double>(r.fallback_tokens) / static_cast<double>(r.tokens);
  return r;
}

Report EfficiencyComparison::to_report() const {
  Report r;
  r.merge(base.to_report(), "base.");
  r.merge(extended.to_report(), "extended.");
  r.add("improvement_ratio", improvement_ratio);
  return r;
}

EfficiencyComparison compare_efficiency(const bpe::Tokenizer& base, const bpe::Tokenizer& extended,
                                        std::span<const std::string> corpus, std::size_t threads) {
  EfficiencyComparison c;
  c.base = encoding_efficiency(base, corpus, threads);
  c.extended = encoding_efficiency(extended, corpus, threads);
  c.improvement_ratio = c.base.tokens_per_char / c.extended.tokens_per_char;
  return c;
}

}  // namespace forge::extend
