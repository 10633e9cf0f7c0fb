#include "naive_bpe.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace forge::testing {
namespace {

const std::string kMarker = "\xE2\x96\x81";

std::size_t expected_length(unsigned char b) {
  if (b < 0x80) return 1;
  if (b >= 0xC2 && b <= 0xDF) return 2;
  if (b >= 0xE0 && b <= 0xEF) return 3;
  if (b >= 0xF0 && b <= 0xF4) return 4;
  return 0;
}

bool well_formed(const std::string& s, std::size_t i, std::size_t n) {
  if (i + n > s.size()) return false;
  const auto b0 = static_cast<unsigned char>(s[i]);
  for (std::size_t k = 1; k < n; ++k) {
    if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
  }
  if (n < 3) return true;
  const auto b1 = static_cast<unsigned char>(s[i + 1]);
  if (b0 == 0xE0 && b1 < 0xA0) return false;  // overlong
  if (b0 == 0xED && b1 > 0x9F) return false;  // surrogate
  if (b0 == 0xF0 && b1 < 0x90) return false;
  if (b0 == 0xF4 && b1 > 0x8F) return false;
  return true;
}

// Words as lists of character strings, spaces turned into a leading marker.
std::vector<std::vector<std::string>> words_of(const std::string& doc) {
  std::vector<std::vector<std::string>> words;
  std::vector<std::string> cur;
  for (const auto& p : naive_utf8_pieces(doc)) {
    if (!p.valid) continue;
    if (p.bytes == " ") {
      if (!cur.empty()) words.push_back(cur);
      cur = {kMarker};
    } else if (p.bytes == kMarker) {
      if (!cur.empty()) words.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(p.bytes);
    }
  }
  if (!cur.empty()) words.push_back(cur);
  return words;
}

std::string byte_name(unsigned v) {
  static const char* hex = "0123456789ABCDEF";
  return std::string("<0x") + hex[v >> 4] + hex[v & 15] + ">";
}

}  // namespace

std::vector<Piece> naive_utf8_pieces(const std::string& text) {
  std::vector<Piece> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t n = expected_length(static_cast<unsigned char>(text[i]));
    if (n == 0 || !well_formed(text, i, n)) {
      out.push_back(Piece{text.substr(i, 1), false});
      ++i;
    } else {
      out.push_back(Piece{text.substr(i, n), true});
      i += n;
    }
  }
  return out;
}

NaiveBpe naive_train(const std::vector<std::string>& corpus, std::size_t target_vocab_size,
                     const std::vector<std::string>& specials, std::uint64_t min_pair_frequency) {
  std::set<std::string> reserved(specials.begin(), specials.end());
  for (unsigned v = 0; v < 256; ++v) reserved.insert(byte_name(v));

  std::vector<std::vector<std::string>> raw;
  for (const auto& doc : corpus) {
    for (auto& w : words_of(doc)) raw.push_back(std::move(w));
  }
  std::map<std::string, std::uint64_t> char_count;
  std::uint64_t total_chars = 0;
  for (const auto& w : raw) {
    for (const auto& c : w) {
      ++char_count[c];
      ++total_chars;
    }
  }
  // Reserved single characters are not learnable and split their word.
  std::vector<std::vector<std::string>> words;
  for (const auto& w : raw) {
    std::vector<std::string> cur;
    for (const auto& c : w) {
      if (reserved.count(c)) {
        if (!cur.empty()) words.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) words.push_back(cur);
  }
  std::uint64_t alphabet_total = 0;
  std::vector<std::pair<std::string, std::uint64_t>> alphabet;
  for (const auto& [c, n] : char_count) {
    if (reserved.count(c)) continue;
    alphabet.emplace_back(c, n);
    alphabet_total += n;
  }
  std::sort(alphabet.begin(), alphabet.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });

  NaiveBpe out;
  for (const auto& [c, n] : alphabet) {
    out.tokens.push_back(c);
    out.scores.push_back(std::log(static_cast<double>(n) / static_cast<double>(alphabet_total)));
  }
  std::set<std::string> known(out.tokens.begin(), out.tokens.end());
  std::set<std::pair<std::string, std::string>> ruled;
  std::set<std::pair<std::string, std::string>> banned;
  std::size_t size = specials.size() + 256 + out.tokens.size();

  while (size < target_vocab_size) {
    std::map<std::pair<std::string, std::string>, std::uint64_t> pairs;
    std::uint64_t symbols = 0;
    for (const auto& w : words) {
      symbols += w.size();
      for (std::size_t i = 0; i + 1 < w.size(); ++i) ++pairs[{w[i], w[i + 1]}];
    }
    // std::map orders pairs by (left, right), so the first maximum found
    // is the lexicographically smallest.
    const std::pair<std::string, std::string>* best = nullptr;
    std::uint64_t best_count = 0;
    for (const auto& [p, n] : pairs) {
      if (banned.count(p)) continue;
      if (reserved.count(p.first + p.second)) {
        banned.insert(p);
        continue;
      }
      if (n > best_count) {
        best = &p;
        best_count = n;
      }
    }
    if (best == nullptr || best_count < min_pair_frequency) break;
    const auto chosen = *best;
    const std::string merged = chosen.first + chosen.second;
    out.selection_counts.push_back(best_count);
    if (ruled.insert(chosen).second) out.rules.push_back(chosen);
    if (known.insert(merged).second) {
      out.tokens.push_back(merged);
      out.scores.push_back(std::log(static_cast<double>(best_count) / static_cast<double>(symbols)));
      ++size;
    }
    for (auto& w : words) {
      std::vector<std::string> next;
      for (std::size_t i = 0; i < w.size();) {
        if (i + 1 < w.size() && w[i] == chosen.first && w[i + 1] == chosen.second) {
          next.push_back(merged);
          i += 2;
        } else {
          next.push_back(w[i]);
          ++i;
        }
      }
      w = std::move(next);
    }
  }
  return out;
}

std::vector<bpe::TokenId> naive_encode(const bpe::Vocabulary& vocab,
                                       const std::vector<std::pair<std::string, std::string>>& rules,
                                       const std::string& text) {
  std::map<std::pair<std::string, std::string>, std::size_t> rank;
  for (std::size_t i = 0; i < rules.size(); ++i) rank.emplace(rules[i], i);
  std::map<std::string, bpe::TokenId> normal;
  for (bpe::TokenId id = vocab.first_normal(); id < vocab.size(); ++id) normal.emplace(vocab.at(id).bytes, id);

  // Each symbol: its string and whether it may take part in merges.
  struct Sym {
    std::string s;
    std::string raw;  // input bytes, used for byte fallback
    bool mergeable;
  };
  std::vector<std::vector<Sym>> words;
  std::vector<Sym> cur;
  for (const auto& p : naive_utf8_pieces(text)) {
    if (p.valid && p.bytes == " ") {
      if (!cur.empty()) words.push_back(cur);
      cur.clear();
      cur.push_back(Sym{kMarker, " ", true});
    } else {
      const bool mergeable = p.valid && p.bytes != kMarker;
      cur.push_back(Sym{p.bytes, p.bytes, mergeable});
    }
  }
  if (!cur.empty()) words.push_back(cur);

  std::vector<bpe::TokenId> ids;
  for (auto& w : words) {
    for (auto& s : w) s.mergeable = s.mergeable && normal.count(s.s);
    while (true) {
      std::size_t best_rank = SIZE_MAX;
      std::size_t at = 0;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (!w[i].mergeable || !w[i + 1].mergeable) continue;
        auto it = rank.find({w[i].s, w[i + 1].s});
        if (it != rank.end() && it->second < best_rank) {
          best_rank = it->second;
          at = i;
        }
      }
      if (best_rank == SIZE_MAX) break;
      w[at].s += w[at + 1].s;
      w[at].raw += w[at + 1].raw;
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(at) + 1);
    }
    for (const auto& s : w) {
      if (s.mergeable) {
        ids.push_back(normal.at(s.s));
      } else {
        for (unsigned char b : s.raw) ids.push_back(vocab.first_normal() - 256 + b);
      }
    }
  }
  return ids;
}

}  // namespace forge::testing
