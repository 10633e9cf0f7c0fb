#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace forge::bpe {

using TokenId = std::uint32_t;
using TokenSequence = std::vector<TokenId>;

// U+2581, the word-boundary marker stored in place of a space.
inline constexpr std::string_view kWordBoundary = "\xE2\x96\x81";
inline constexpr char32_t kWordBoundaryCodePoint = 0x2581;
inline constexpr std::size_t kByteFallbackCount = 256;

enum class TokenKind : std::uint8_t { special, byte, normal };

struct Token {
  std::string bytes;
  double score = 0.0;
  TokenKind kind = TokenKind::normal;
};

struct IndexedToken {
  TokenId id = 0;
  Token token;
};

std::vector<std::string> default_specials();

// "<0x41>" style piece naming a byte-fallback token.
std::string byte_piece(unsigned char value);
std::optional<unsigned char> parse_byte_piece(std::string_view piece);

// Ordered token table. Layout is fixed: reserved specials occupy ids
// [0, S), the 256 byte-fallback tokens [S, S + 256), and normal tokens
// (characters and merge results, with spaces written as U+2581) follow.
class Vocabulary {
 public:
  Vocabulary();

  // Specials, then the byte block, then `normals` in order.
  static Vocabulary create(std::span<const std::string> specials, std::vector<Token> normals);
  // Full table in id order. Kinds are inferred from the layout.
  static Vocabulary from_tokens(std::vector<Token> tokens);
  // Explicit ids; rejects duplicates and gaps.
  static Vocabulary from_indexed(std::vector<IndexedToken> entries);

  std::size_t size() const noexcept { return tokens_.size(); }
  std::span<const Token> tokens() const noexcept { return tokens_; }
  const Token& at(TokenId id) const;

  std::optional<TokenId> find(std::string_view bytes) const;
  std::optional<TokenId> find_normal(std::string_view bytes) const;
  // Normal token consisting of exactly this code point.
  std::optional<TokenId> find_char(char32_t cp) const {
    auto it = char_ids_.find(cp);
    if (it == char_ids_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t special_count() const noexcept { return byte_base_; }
  TokenId byte_id(unsigned char value) const noexcept { return byte_base_ + value; }
  bool is_byte(TokenId id) const noexcept { return id >= byte_base_ && id < byte_base_ + kByteFallbackCount; }
  bool is_special(TokenId id) const noexcept { return id < byte_base_; }
  bool is_normal(TokenId id) const noexcept { return id >= first_normal() && id < size(); }
  unsigned char byte_value(TokenId id) const noexcept { return static_cast<unsigned char>(id - byte_base_); }
  TokenId first_normal() const noexcept { return byte_base_ + static_cast<TokenId>(kByteFallbackCount); }

  // Exact equality, scores compared bitwise.
  bool operator==(const Vocabulary& other) const noexcept;

 private:
  explicit Vocabulary(std::vector<Token> tokens, TokenId byte_base);
  void build_index();

  std::vector<Token> tokens_;
  std::unordered_map<std::string, TokenId> index_;
  std::unordered_map<char32_t, TokenId> char_ids_;
  TokenId byte_base_ = 0;
};

struct MergeRule {
  TokenId left = 0;
  TokenId right = 0;
  TokenId result = 0;

  bool operator==(const MergeRule&) const = default;
};

// Ranked merge rules over a companion Vocabulary; rank = list position.
class MergeRuleList {
 public:
  MergeRuleList() = default;

  // Validates every rule against `vocab`: operands and result are normal
  // tokens, result bytes equal left + right, and no (left, right) repeats.
  static MergeRuleList create(const Vocabulary& vocab, std::vector<MergeRule> rules);

  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }
  std::span<const MergeRule> rules() const noexcept { return rules_; }
  const MergeRule& operator[](std::size_t rank) const { return rules_[rank]; }

  struct Match {
    std::uint32_t rank;
    TokenId result;
  };
  std::optional<Match> lookup(TokenId left, TokenId right) const {
    auto it = ranks_.find(key(left, right));
    if (it == ranks_.end()) return std::nullopt;
    return Match{it->second, rules_[it->second].result};
  }

  // The first `count` rules.
  MergeRuleList prefix(std::size_t count) const;

  bool operator==(const MergeRuleList& other) const noexcept { return rules_ == other.rules_; }

 private:
  static constexpr std::uint64_t key(TokenId l, TokenId r) noexcept {
    return (static_cast<std::uint64_t>(l) << 32) | r;
  }

  std::vector<MergeRule> rules_;
  std::unordered_map<std::uint64_t, std::uint32_t> ranks_;
};

}  // namespace forge::bpe
