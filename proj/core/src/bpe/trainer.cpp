#include "forge/bpe/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "forge/bpe/pretokenize.hpp"
#include "forge/error.hpp"
#include "forge/parallel.hpp"
#include "forge/utf8.hpp"

namespace forge::bpe {

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::target_reached: return "target_reached";
    case StopReason::no_pairs: return "no_pairs";
    case StopReason::below_min_frequency: return "below_min_frequency";
  }
  return "unknown";
}

std::vector<WordCount> count_words(std::span<const std::string> corpus, bool normalize, std::size_t threads) {
  threads = resolve_threads(threads);
  std::vector<std::unordered_map<std::u32string, std::uint64_t>> partial(std::max<std::size_t>(1, threads));
  parallel_for(corpus.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t w) {
    auto& local = partial[w];
    for (std::size_t d = begin; d < end; ++d) {
      for (auto& word : training_words(corpus[d], normalize)) ++local[std::move(word)];
    }
  });
  std::map<std::u32string, std::uint64_t> merged;
  for (auto& local : partial) {
    for (auto& [w, c] : local) merged[w] += c;
  }
  std::vector<WordCount> out;
  out.reserve(merged.size());
  for (auto& [w, c] : merged) out.push_back(WordCount{w, c});
  return out;
}

namespace {

using SymId = std::uint32_t;
using PairKey = std::uint64_t;

constexpr PairKey make_key(SymId l, SymId r) noexcept { return (static_cast<PairKey>(l) << 32) | r; }
constexpr SymId key_left(PairKey k) noexcept { return static_cast<SymId>(k >> 32); }
constexpr SymId key_right(PairKey k) noexcept { return static_cast<SymId>(k & 0xFFFFFFFFu); }

struct TrainWord {
  std::vector<SymId> syms;
  std::uint64_t count = 0;
};

struct Alphabet {
  std::vector<std::string> chars;  // vocabulary order
  std::vector<std::uint64_t> counts;
  std::unordered_map<char32_t, SymId> ids;
  std::uint64_t total = 0;
};

std::unordered_set<std::string> reserved_pieces(std::span<const std::string> specials) {
  std::unordered_set<std::string> reserved(specials.begin(), specials.end());
  for (unsigned v = 0; v < kByteFallbackCount; ++v) reserved.insert(byte_piece(static_cast<unsigned char>(v)));
  return reserved;
}

Alphabet build_alphabet(const std::vector<WordCount>& words, const std::unordered_set<std::string>& reserved) {
  std::map<char32_t, std::uint64_t> freq;
  for (const auto& w : words) {
    for (char32_t cp : w.word) freq[cp] += w.count;
  }
  std::vector<std::pair<std::string, std::uint64_t>> order;
  for (const auto& [cp, c] : freq) {
    std::string s = utf8::encode(cp);
    if (reserved.contains(s)) continue;
    order.emplace_back(std::move(s), c);
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Alphabet alpha;
  for (auto& [s, c] : order) {
    const std::size_t len = utf8::sequence_length(s, 0);
    alpha.ids.emplace(utf8::decode_at(s, 0, len), static_cast<SymId>(alpha.chars.size()));
    alpha.chars.push_back(std::move(s));
    alpha.counts.push_back(c);
    alpha.total += c;
  }
  return alpha;
}

void validate_specials(std::span<const std::string> specials) {
  std::unordered_set<std::string> seen;
  for (const auto& s : specials) {
    if (s.empty()) throw ValidationError("special tokens must be non-empty");
    if (parse_byte_piece(s)) throw ValidationError("special token " + s + " collides with a byte piece");
    if (!seen.insert(s).second) throw ValidationError("duplicate special token " + s);
  }
}

class PairTrainer {
 public:
  PairTrainer(std::vector<std::string> symbols, std::vector<TrainWord> words, std::size_t threads)
      : sym_str_(std::move(symbols)), words_(std::move(words)), heap_(HeapOrder{&sym_str_}) {
    for (SymId i = 0; i < sym_str_.size(); ++i) sym_index_.emplace(sym_str_[i], i);
    for (const auto& w : words_) total_symbols_ += w.count * w.syms.size();
    count_initial(threads);
  }

  struct Selected {
    SymId left, right, result;
    std::uint64_t count;
    bool created;
  };

  // Picks and applies the next merge. Returns false with `why` set when no
  // admissible pair remains.
  bool step(std::uint64_t min_frequency, const std::unordered_set<std::string>& reserved, Selected& out,
            StopReason& why) {
    while (true) {
      if (heap_.empty()) {
        why = StopReason::no_pairs;
        return false;
      }
      const HeapEntry top = heap_.top();
      auto it = counts_.find(top.key);
      if (it == counts_.end() || it->second != top.count || top.count == 0) {
        heap_.pop();
        continue;
      }
      if (banned_.contains(top.key)) {
        heap_.pop();
        continue;
      }
      if (top.count < min_frequency) {
        why = StopReason::below_min_frequency;
        return false;
      }
      const SymId l = key_left(top.key);
      const SymId r = key_right(top.key);
      std::string merged = sym_str_[l] + sym_str_[r];
      if (reserved.contains(merged)) {
        banned_.insert(top.key);
        heap_.pop();
        continue;
      }
      heap_.pop();
      out.left = l;
      out.right = r;
      out.count = top.count;
      auto found = sym_index_.find(merged);
      if (found != sym_index_.end()) {
        out.result = found->second;
        out.created = false;
      } else {
        out.result = static_cast<SymId>(sym_str_.size());
        sym_index_.emplace(merged, out.result);
        sym_str_.push_back(std::move(merged));
        out.created = true;
      }
      share_ = static_cast<double>(top.count) / static_cast<double>(total_symbols_);
      apply(top.key, out.result);
      return true;
    }
  }

  // Relative frequency of the pair chosen by the last step, measured before applying it.
  double last_share() const noexcept { return share_; }
  const std::string& symbol(SymId id) const { return sym_str_[id]; }

 private:
  struct HeapEntry {
    std::uint64_t count;
    PairKey key;
  };
  struct HeapOrder {
    const std::vector<std::string>* syms;
    // true when `a` ranks below `b`: lower count, or equal count and a
    // lexicographically larger (left, right).
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
      if (a.count != b.count) return a.count < b.count;
      const auto& s = *syms;
      const int cl = s[key_left(a.key)].compare(s[key_left(b.key)]);
      if (cl != 0) return cl > 0;
      return s[key_right(a.key)].compare(s[key_right(b.key)]) > 0;
    }
  };

  void count_initial(std::size_t threads) {
    threads = resolve_threads(threads);
    std::vector<std::unordered_map<PairKey, std::uint64_t>> partial(std::max<std::size_t>(1, threads));
    parallel_for(words_.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t w) {
      auto& local = partial[w];
      for (std::size_t i = begin; i < end; ++i) {
        const auto& syms = words_[i].syms;
        for (std::size_t j = 0; j + 1 < syms.size(); ++j) local[make_key(syms[j], syms[j + 1])] += words_[i].count;
      }
    });
    for (auto& local : partial) {
      for (const auto& [k, c] : local) counts_[k] += c;
    }
    for (std::uint32_t i = 0; i < words_.size(); ++i) {
      const auto& syms = words_[i].syms;
      for (std::size_t j = 0; j + 1 < syms.size(); ++j) {
        auto& list = where_[make_key(syms[j], syms[j + 1])];
        if (list.empty() || list.back() != i) list.push_back(i);
      }
    }
    for (const auto& [k, c] : counts_) heap_.push(HeapEntry{c, k});
  }

  void apply(PairKey key, SymId result) {
    const SymId l = key_left(key);
    const SymId r = key_right(key);
    std::vector<std::uint32_t> targets = std::move(where_[key]);
    where_.erase(key);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    std::unordered_set<PairKey> changed;
    std::vector<SymId> merged;
    for (std::uint32_t wi : targets) {
      TrainWord& w = words_[wi];
      auto& syms = w.syms;
      bool present = false;
      for (std::size_t j = 0; j + 1 < syms.size(); ++j) {
        if (syms[j] == l && syms[j + 1] == r) {
          present = true;
          break;
        }
      }
      if (!present) continue;
      for (std::size_t j = 0; j + 1 < syms.size(); ++j) {
        const PairKey k = make_key(syms[j], syms[j + 1]);
        counts_[k] -= w.count;
        changed.insert(k);
      }
      merged.clear();
      std::size_t applied = 0;
      for (std::size_t j = 0; j < syms.size();) {
        if (j + 1 < syms.size() && syms[j] == l && syms[j + 1] == r) {
          merged.push_back(result);
          j += 2;
          ++applied;
        } else {
          merged.push_back(syms[j]);
          ++j;
        }
      }
      syms.swap(merged);
      total_symbols_ -= w.count * applied;
      for (std::size_t j = 0; j + 1 < syms.size(); ++j) {
        const PairKey k = make_key(syms[j], syms[j + 1]);
        counts_[k] += w.count;
        changed.insert(k);
        auto& list = where_[k];
        if (list.empty() || list.back() != wi) list.push_back(wi);
      }
    }
    for (PairKey k : changed) {
      auto it = counts_.find(k);
      if (it == counts_.end()) continue;
      if (it->second == 0) {
        counts_.erase(it);
        where_.erase(k);
      } else {
        heap_.push(HeapEntry{it->second, k});
      }
    }
  }

  std::vector<std::string> sym_str_;
  std::unordered_map<std::string, SymId> sym_index_;
  std::vector<TrainWord> words_;
  std::unordered_map<PairKey, std::uint64_t> counts_;
  std::unordered_map<PairKey, std::vector<std::uint32_t>> where_;
  std::unordered_set<PairKey> banned_;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> heap_;
  std::uint64_t total_symbols_ = 0;
  double share_ = 0.0;
};

std::vector<TrainWord> to_symbol_words(const std::vector<WordCount>& counted, const Alphabet& alpha) {
  std::vector<TrainWord> words;
  words.reserve(counted.size());
  for (const auto& wc : counted) {
    TrainWord cur{{}, wc.count};
    for (char32_t cp : wc.word) {
      auto it = alpha.ids.find(cp);
      if (it == alpha.ids.end()) {
        // Character excluded from the alphabet: it splits the word.
        if (!cur.syms.empty()) words.push_back(std::move(cur));
        cur = TrainWord{{}, wc.count};
        continue;
      }
      cur.syms.push_back(it->second);
    }
    if (!cur.syms.empty()) words.push_back(std::move(cur));
  }
  return words;
}

}  // namespace

std::size_t minimum_vocab_size(std::span<const std::string> corpus, const TrainerOptions& options) {
  validate_specials(options.specials);
  const auto words = count_words(corpus, options.normalize, options.threads);
  const auto alpha = build_alphabet(words, reserved_pieces(options.specials));
  return options.specials.size() + kByteFallbackCount + alpha.chars.size();
}

TrainResult train_bpe(std::span<const std::string> corpus, const TrainerOptions& options) {
  if (corpus.empty()) throw ValidationError("training corpus is empty");
  validate_specials(options.specials);
  const auto reserved = reserved_pieces(options.specials);

  const auto counted = count_words(corpus, options.normalize, options.threads);
  const Alphabet alpha = build_alphabet(counted, reserved);
  if (alpha.chars.empty()) throw ValidationError("training corpus contains no characters");

  const std::size_t floor = options.specials.size() + kByteFallbackCount + alpha.chars.size();
  if (options.target_vocab_size < floor) {
    throw ValidationError("target vocab size " + std::to_string(options.target_vocab_size) +
                          " is below the floor " + std::to_string(floor) + " (specials " +
                          std::to_string(options.specials.size()) + " + 256 byte fallback + alphabet " +
                          std::to_string(alpha.chars.size()) + ")");
  }

  TrainingStats stats;
  stats.documents = corpus.size();
  stats.characters = alpha.total;
  stats.unique_words = counted.size();
  stats.alphabet_size = alpha.chars.size();

  std::vector<Token> normals;
  normals.reserve(options.target_vocab_size - options.specials.size() - kByteFallbackCount);
  for (std::size_t i = 0; i < alpha.chars.size(); ++i) {
    const double share = static_cast<double>(alpha.counts[i]) / static_cast<double>(alpha.total);
    normals.push_back(Token{alpha.chars[i], std::log(share), TokenKind::normal});
  }

  PairTrainer trainer(alpha.chars, to_symbol_words(counted, alpha), options.threads);
  // Symbol ids coincide with positions in `normals`: the alphabet first,
  // then each newly created merge result.
  struct RawRule {
    std::uint32_t left, right, result;
  };
  std::vector<RawRule> raw_rules;
  std::unordered_set<PairKey> ruled;
  std::size_t vocab_size = floor;
  StopReason why = StopReason::target_reached;
  while (vocab_size < options.target_vocab_size) {
    PairTrainer::Selected sel{};
    if (!trainer.step(options.min_pair_frequency, reserved, sel, why)) break;
    // A pair can re-emerge after a merge recreates an existing symbol; the
    // earlier rule already covers it.
    if (ruled.insert(make_key(sel.left, sel.right)).second) {
      raw_rules.push_back(RawRule{sel.left, sel.right, sel.result});
    }
    if (sel.created) {
      normals.push_back(Token{trainer.symbol(sel.result), std::log(trainer.last_share()), TokenKind::normal});
      ++vocab_size;
    }
  }
  if (vocab_size >= options.target_vocab_size) why = StopReason::target_reached;

  Vocabulary vocab = Vocabulary::create(options.specials, std::move(normals));
  const TokenId offset = vocab.first_normal();
  std::vector<MergeRule> rules;
  rules.reserve(raw_rules.size());
  for (const auto& r : raw_rules) rules.push_back(MergeRule{offset + r.left, offset + r.right, offset + r.result});
  MergeRuleList merges = MergeRuleList::create(vocab, std::move(rules));

  stats.merges = merges.size();
  stats.vocab_size = vocab.size();
  stats.stop = why;
  return TrainResult{Tokenizer(std::move(vocab), std::move(merges)), stats};
}

}  // namespace forge::bpe
