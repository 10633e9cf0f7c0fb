#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "forge/bpe/tokenizer.hpp"
#include "forge/bpe/vocabulary.hpp"

namespace forge::bpe {

inline constexpr std::string_view kFileHeader = "#bpe-v1";

// Vocabulary file: header, then `<escaped-bytes>\t<score>` per token; the
// line after the header is id 0. Merge file: header, then `<left> <right>`
// per rule in rank order.
std::string serialize_vocab(const Vocabulary& vocab);
std::string serialize_merges(const Vocabulary& vocab, const MergeRuleList& merges);

// Both throw ParseError carrying the offending line number.
Vocabulary parse_vocab(std::string_view content, const std::string& source = "<vocab>");
MergeRuleList parse_merges(std::string_view content, const Vocabulary& vocab,
                           const std::string& source = "<merges>");

// Companion merge file for a vocabulary path: `<vocab>.merges`.
std::filesystem::path merges_path_for(const std::filesystem::path& vocab_path);

void save_tokenizer(const Tokenizer& tok, const std::filesystem::path& vocab_path,
                    const std::filesystem::path& merges_path);
void save_tokenizer(const Tokenizer& tok, const std::filesystem::path& vocab_path);
Tokenizer load_tokenizer(const std::filesystem::path& vocab_path, const std::filesystem::path& merges_path);
Tokenizer load_tokenizer(const std::filesystem::path& vocab_path);

}  // namespace forge::bpe
