#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "forge/bpe/tokenizer.hpp"
#include "forge/extend/filters.hpp"
#include "forge/report.hpp"

namespace forge::extend {

// One extension vocabulary, with optional merge rules and token counts.
struct ExtensionSource {
  std::string name;
  bpe::Vocabulary vocab;
  bpe::MergeRuleList merges;
  std::unordered_map<std::string, std::uint64_t> frequencies;
};

ExtensionSource source_from_tokenizer(std::string name, const bpe::Tokenizer& tok);
// Curated token list without merge rules; spaces in tokens become U+2581.
ExtensionSource source_from_tokens(std::string name, std::span<const std::string> tokens);
// Plain UTF-8 list, one token per line; blank lines are skipped.
ExtensionSource load_token_list(const std::filesystem::path& path);

// Count of every token (overlapping occurrences) in a reference corpus.
std::unordered_map<std::string, std::uint64_t> count_occurrences(const bpe::Vocabulary& vocab,
                                                                 std::span<const std::string> corpus);

struct SourceBreakdown {
  std::string name;
  std::size_t entries = 0;
  std::size_t added = 0;
  std::size_t duplicates = 0;
  std::size_t filtered = 0;
  std::size_t reserved = 0;  // extension specials absent from the base (part of filtered)
  std::size_t denied = 0;
  std::size_t below_frequency = 0;
  std::size_t script_rejected = 0;
};

struct MergeReport {
  std::size_t base_size = 0;
  std::size_t added = 0;
  std::size_t duplicates_skipped = 0;
  std::size_t filtered = 0;
  std::size_t final_size = 0;
  std::size_t total_extension_entries = 0;
  std::size_t base_rules = 0;
  std::size_t appended_rules = 0;
  std::size_t synthesized_rules = 0;
  std::size_t unreachable_tokens = 0;
  std::optional<std::size_t> target_size;
  double target_tolerance = 0.05;
  std::vector<SourceBreakdown> sources;

  // |final - target| <= tolerance * target; true when no target is set.
  bool within_target() const noexcept;
  // final = base + added and added + duplicates + filtered = total.
  bool consistent() const noexcept;
  Report to_report() const;
};

struct MergeOptions {
  std::optional<std::size_t> target_size;
  double tolerance = 0.05;
};

struct MergeOutcome {
  bpe::Tokenizer merged;
  MergeReport report;
};

// Base tokens keep their ids. Surviving extension tokens get consecutive
// ids from base_size in extension order then source order; the first
// occurrence of a token wins. Extension rules producing added tokens are
// appended after the base rules, then every added multi-character token
// still lacking a producing rule gets one synthesized from a split whose
// halves are present.
MergeOutcome merge_vocabularies(const bpe::Tokenizer& base, std::span<const ExtensionSource> extensions,
                                const FilterRules& filters, const MergeOptions& options = {});

}  // namespace forge::extend
