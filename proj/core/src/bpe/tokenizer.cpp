#include "forge/bpe/tokenizer.hpp"

#include <queue>
#include <vector>

#include "forge/bpe/pretokenize.hpp"
#include "forge/error.hpp"
#include "forge/utf8.hpp"

namespace forge::bpe {

Tokenizer::Tokenizer(Vocabulary vocab, MergeRuleList merges)
    : vocab_(std::move(vocab)), merges_(std::move(merges)) {
  for (const auto& r : merges_.rules()) {
    if (!vocab_.is_normal(r.left) || !vocab_.is_normal(r.right) || !vocab_.is_normal(r.result)) {
      throw ValidationError("merge rules do not match the vocabulary");
    }
  }
}

TokenSequence Tokenizer::encode(std::string_view text, EncodeOptions options) const {
  TokenSequence out;
  out.reserve(text.size() / 2 + 1);
  encode_into(text, out, options);
  return out;
}

void Tokenizer::encode_into(std::string_view text, TokenSequence& out, EncodeOptions options) const {
  std::string normalized;
  if (options.normalize) {
    normalized = nfkc(text);
    text = normalized;
  }
  for (const Word& word : split_words(text)) encode_word(text, word, out);
}

namespace {

struct Candidate {
  std::uint32_t rank;
  std::uint32_t pos;
  TokenId left;
  TokenId right;
};

struct CandidateOrder {
  bool operator()(const Candidate& a, const Candidate& b) const noexcept {
    if (a.rank != b.rank) return a.rank > b.rank;
    return a.pos > b.pos;
  }
};

}  // namespace

void Tokenizer::encode_word(std::string_view text, std::span<const Unit> word, TokenSequence& out) const {
  std::vector<TokenId> ids;
  ids.reserve(word.size());
  for (const Unit& u : word) {
    std::optional<TokenId> id;
    if (!u.opaque) id = vocab_.find_char(u.cp);
    if (id) {
      ids.push_back(*id);
    } else {
      for (std::size_t b = 0; b < u.length; ++b) {
        ids.push_back(vocab_.byte_id(static_cast<unsigned char>(text[u.offset + b])));
      }
    }
  }
  if (ids.size() < 2 || merges_.empty()) {
    out.insert(out.end(), ids.begin(), ids.end());
    return;
  }

  const auto n = static_cast<std::uint32_t>(ids.size());
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> prev(n), next(n);
  std::vector<bool> alive(n, true);
  for (std::uint32_t i = 0; i < n; ++i) {
    prev[i] = i == 0 ? kNone : i - 1;
    next[i] = i + 1 == n ? kNone : i + 1;
  }

  std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> heap;
  auto consider = [&](std::uint32_t pos) {
    if (pos == kNone || next[pos] == kNone) return;
    if (auto m = merges_.lookup(ids[pos], ids[next[pos]])) {
      heap.push(Candidate{m->rank, pos, ids[pos], ids[next[pos]]});
    }
  };
  for (std::uint32_t i = 0; i + 1 < n; ++i) consider(i);

  while (!heap.empty()) {
    const Candidate c = heap.top();
    heap.pop();
    if (!alive[c.pos] || next[c.pos] == kNone) continue;
    const std::uint32_t right = next[c.pos];
    if (ids[c.pos] != c.left || ids[right] != c.right) continue;
    ids[c.pos] = merges_[c.rank].result;
    alive[right] = false;
    next[c.pos] = next[right];
    if (next[right] != kNone) prev[next[right]] = c.pos;
    consider(prev[c.pos]);
    consider(c.pos);
  }

  for (std::uint32_t i = 0; i != kNone; i = next[i]) out.push_back(ids[i]);
}

Decoded Tokenizer::decode(std::span<const TokenId> ids) const {
  std::string raw;
  raw.reserve(ids.size() * 3);
  for (TokenId id : ids) {
    const Token& t = vocab_.at(id);
    switch (t.kind) {
      case TokenKind::special:
        break;
      case TokenKind::byte:
        raw.push_back(static_cast<char>(vocab_.byte_value(id)));
        break;
      case TokenKind::normal: {
        std::string_view b = t.bytes;
        for (std::size_t pos = 0; pos < b.size();) {
          const std::size_t hit = b.find(kWordBoundary, pos);
          if (hit == std::string_view::npos) {
            raw.append(b.substr(pos));
            break;
          }
          raw.append(b.substr(pos, hit - pos));
          raw.push_back(' ');
          pos = hit + kWordBoundary.size();
        }
        break;
      }
    }
  }
  auto clean = utf8::sanitize(raw);
  return Decoded{std::move(clean.text), clean.lossy};
}

Tokenizer Tokenizer::with_merge_prefix(std::size_t count) const {
  return Tokenizer(vocab_, merges_.prefix(count));
}

}  // namespace forge::bpe
