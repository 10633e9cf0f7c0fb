#include "forge/bpe/vocabulary.hpp"

#include <bit>
#include <cstdio>
#include <unordered_set>

#include "forge/error.hpp"
#include "forge/utf8.hpp"

namespace forge::bpe {

std::vector<std::string> default_specials() { return {"<pad>", "<s>", "</s>", "<unk>"}; }

std::string byte_piece(unsigned char value) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "<0x%02X>", value);
  return buf;
}

std::optional<unsigned char> parse_byte_piece(std::string_view piece) {
  if (piece.size() != 6 || piece.substr(0, 3) != "<0x" || piece[5] != '>') return std::nullopt;
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  const int hi = hex(piece[3]);
  const int lo = hex(piece[4]);
  if (hi < 0 || lo < 0) return std::nullopt;
  return static_cast<unsigned char>((hi << 4) | lo);
}

Vocabulary::Vocabulary() : Vocabulary(create({}, {})) {}

Vocabulary::Vocabulary(std::vector<Token> tokens, TokenId byte_base)
    : tokens_(std::move(tokens)), byte_base_(byte_base) {
  build_index();
}

void Vocabulary::build_index() {
  index_.clear();
  char_ids_.clear();
  index_.reserve(tokens_.size());
  for (TokenId id = 0; id < tokens_.size(); ++id) {
    const Token& t = tokens_[id];
    if (t.bytes.empty()) throw ValidationError("token " + std::to_string(id) + " is empty");
    if (!index_.emplace(t.bytes, id).second) {
      throw ValidationError("duplicate token bytes at id " + std::to_string(id));
    }
    if (t.kind == TokenKind::normal) {
      if (!utf8::is_valid(t.bytes)) {
        throw ValidationError("normal token " + std::to_string(id) + " is not valid UTF-8");
      }
      const std::size_t len = utf8::sequence_length(t.bytes, 0);
      if (len == t.bytes.size()) char_ids_.emplace(utf8::decode_at(t.bytes, 0, len), id);
    }
  }
}

Vocabulary Vocabulary::create(std::span<const std::string> specials, std::vector<Token> normals) {
  std::vector<Token> tokens;
  tokens.reserve(specials.size() + kByteFallbackCount + normals.size());
  for (const auto& s : specials) {
    if (s.empty()) throw ValidationError("special token must be non-empty");
    if (parse_byte_piece(s)) throw ValidationError("special token " + s + " collides with a byte piece");
    tokens.push_back(Token{s, 0.0, TokenKind::special});
  }
  for (unsigned v = 0; v < kByteFallbackCount; ++v) {
    tokens.push_back(Token{byte_piece(static_cast<unsigned char>(v)), 0.0, TokenKind::byte});
  }
  for (auto& n : normals) {
    n.kind = TokenKind::normal;
    tokens.push_back(std::move(n));
  }
  return Vocabulary(std::move(tokens), static_cast<TokenId>(specials.size()));
}

Vocabulary Vocabulary::from_tokens(std::vector<Token> tokens) {
  std::size_t base = tokens.size();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].bytes == "<0x00>") {
      base = i;
      break;
    }
  }
  if (base + kByteFallbackCount > tokens.size()) {
    throw ValidationError("vocabulary lacks the 256-entry byte-fallback block");
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i < base) {
      tokens[i].kind = TokenKind::special;
    } else if (i < base + kByteFallbackCount) {
      const auto v = parse_byte_piece(tokens[i].bytes);
      if (!v || *v != i - base) {
        throw ValidationError("byte-fallback block broken at id " + std::to_string(i));
      }
      tokens[i].kind = TokenKind::byte;
    } else {
      tokens[i].kind = TokenKind::normal;
    }
  }
  return Vocabulary(std::move(tokens), static_cast<TokenId>(base));
}

Vocabulary Vocabulary::from_indexed(std::vector<IndexedToken> entries) {
  std::vector<Token> tokens(entries.size());
  std::vector<bool> seen(entries.size(), false);
  for (auto& e : entries) {
    if (e.id >= entries.size()) {
      throw ValidationError("token id " + std::to_string(e.id) + " leaves a gap (ids must be dense 0.." +
                            std::to_string(entries.size() - 1) + ")");
    }
    if (seen[e.id]) throw ValidationError("duplicate token id " + std::to_string(e.id));
    seen[e.id] = true;
    tokens[e.id] = std::move(e.token);
  }
  return from_tokens(std::move(tokens));
}

const Token& Vocabulary::at(TokenId id) const {
  if (id >= tokens_.size()) {
    throw ValidationError("token id " + std::to_string(id) + " out of range (size " +
                          std::to_string(tokens_.size()) + ")");
  }
  return tokens_[id];
}

std::optional<TokenId> Vocabulary::find(std::string_view bytes) const {
  auto it = index_.find(std::string(bytes));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<TokenId> Vocabulary::find_normal(std::string_view bytes) const {
  auto id = find(bytes);
  if (id && is_normal(*id)) return id;
  return std::nullopt;
}

bool Vocabulary::operator==(const Vocabulary& other) const noexcept {
  if (byte_base_ != other.byte_base_ || tokens_.size() != other.tokens_.size()) return false;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const Token& a = tokens_[i];
    const Token& b = other.tokens_[i];
    if (a.bytes != b.bytes || a.kind != b.kind ||
        std::bit_cast<std::uint64_t>(a.score) != std::bit_cast<std::uint64_t>(b.score)) {
      return false;
    }
  }
  return true;
}

MergeRuleList MergeRuleList::create(const Vocabulary& vocab, std::vector<MergeRule> rules) {
  MergeRuleList list;
  list.ranks_.reserve(rules.size());
  for (std::size_t rank = 0; rank < rules.size(); ++rank) {
    const MergeRule& r = rules[rank];
    const std::string where = "merge rule " + std::to_string(rank);
    if (!vocab.is_normal(r.left) || !vocab.is_normal(r.right) || !vocab.is_normal(r.result)) {
      throw ValidationError(where + " references a non-normal or out-of-range token");
    }
    const auto& l = vocab.at(r.left).bytes;
    const auto& rt = vocab.at(r.right).bytes;
    const auto& res = vocab.at(r.result).bytes;
    if (res.size() != l.size() + rt.size() || res.compare(0, l.size(), l) != 0 ||
        res.compare(l.size(), rt.size(), rt) != 0) {
      throw ValidationError(where + ": result is not the concatenation of its operands");
    }
    if (!list.ranks_.emplace(key(r.left, r.right), static_cast<std::uint32_t>(rank)).second) {
      throw ValidationError(where + " duplicates an earlier (left, right) pair");
    }
  }
  list.rules_ = std::move(rules);
  return list;
}

MergeRuleList MergeRuleList::prefix(std::size_t count) const {
  MergeRuleList p;
  count = std::min(count, rules_.size());
  p.rules_.assign(rules_.begin(), rules_.begin() + static_cast<std::ptrdiff_t>(count));
  for (std::size_t i = 0; i < count; ++i) p.ranks_.emplace(key(p.rules_[i].left, p.rules_[i].right), i);
  return p;
}

}  // namespace forge::bpe
