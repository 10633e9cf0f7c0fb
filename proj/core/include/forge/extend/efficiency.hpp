#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "forge/bpe/tokenizer.hpp"
#include "forge/report.hpp"

namespace forge::extend {

struct EfficiencyReport {
  std::uint64_t documents = 0;
  std::uint64_t corpus_chars = 0;  // unicode code points
  std::uint64_t tokens = 0;
  std::uint64_t fallback_tokens = 0;
  double tokens_per_char = 0.0;
  double chars_per_token = 0.0;
  double fallback_fraction = 0.0;  // over emitted tokens

  Report to_report() const;
};

// Each corpus entry is one document. Throws ValidationError for an empty
// corpus or one without characters.
EfficiencyReport encoding_efficiency(const bpe::Tokenizer& tok, std::span<const std::string> corpus,
                                     std::size_t threads = 0);

struct EfficiencyComparison {
  EfficiencyReport base;
  EfficiencyReport extended;
  // tokens_per_char(base) / tokens_per_char(extended)
  double improvement_ratio = 1.0;

  Report to_report() const;
};

EfficiencyComparison compare_efficiency(const bpe::Tokenizer& base, const bpe::Tokenizer& extended,
                                        std::span<const std::string> corpus, std::size_t threads = 0);

}  // namespace forge::extend
