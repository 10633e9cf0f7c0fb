#include "forge/extend/merge.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "forge/error.hpp"
#include "forge/text.hpp"
#include "forge/utf8.hpp"

namespace forge::extend {

using bpe::MergeRule;
using bpe::Token;
using bpe::TokenId;
using bpe::TokenKind;

namespace {

std::string to_vocab_bytes(std::string_view display) {
  std::string out;
  out.reserve(display.size());
  for (char c : display) {
    if (c == ' ') out += bpe::kWordBoundary;
    else out.push_back(c);
  }
  return out;
}

std::string to_display(std::string_view bytes) {
  std::string out;
  for (std::size_t pos = 0; pos < bytes.size();) {
    const std::size_t hit = bytes.find(bpe::kWordBoundary, pos);
    if (hit == std::string_view::npos) {
      out.append(bytes.substr(pos));
      break;
    }
    out.append(bytes.substr(pos, hit - pos));
    out.push_back(' ');
    pos = hit + bpe::kWordBoundary.size();
  }
  return out;
}

std::vector<std::size_t> code_point_offsets(std::string_view s) {
  std::vector<std::size_t> offs;
  for (std::size_t i = 0; i < s.size();) {
    offs.push_back(i);
    const std::size_t len = utf8::sequence_length(s, i);
    i += len == 0 ? 1 : len;
  }
  offs.push_back(s.size());
  return offs;
}

}  // namespace

ExtensionSource source_from_tokenizer(std::string name, const bpe::Tokenizer& tok) {
  return ExtensionSource{std::move(name), tok.vocab(), tok.merges(), {}};
}

ExtensionSource source_from_tokens(std::string name, std::span<const std::string> tokens) {
  std::vector<Token> normals;
  std::unordered_set<std::string> seen;
  for (const auto& t : tokens) {
    if (t.empty()) continue;
    if (!utf8::is_valid(t)) throw ValidationError("token list " + name + " contains invalid UTF-8");
    std::string bytes = to_vocab_bytes(t);
    if (!seen.insert(bytes).second) continue;
    normals.push_back(Token{std::move(bytes), 0.0, TokenKind::normal});
  }
  std::vector<std::string> no_specials;
  return ExtensionSource{std::move(name), bpe::Vocabulary::create(no_specials, std::move(normals)), {}, {}};
}

ExtensionSource load_token_list(const std::filesystem::path& path) {
  const auto lines = text::read_lines(path);
  return source_from_tokens(path.filename().string(), lines);
}

std::unordered_map<std::string, std::uint64_t> count_occurrences(const bpe::Vocabulary& vocab,
                                                                 std::span<const std::string> corpus) {
  std::unordered_map<std::string, std::string> by_display;
  std::size_t max_cps = 0;
  for (TokenId id = vocab.first_normal(); id < vocab.size(); ++id) {
    const auto& bytes = vocab.at(id).bytes;
    by_display.emplace(to_display(bytes), bytes);
    max_cps = std::max(max_cps, utf8::count_code_points(bytes));
  }
  std::unordered_map<std::string, std::uint64_t> counts;
  std::string probe;
  for (const auto& doc : corpus) {
    const auto offs = code_point_offsets(doc);
    for (std::size_t i = 0; i + 1 < offs.size(); ++i) {
      for (std::size_t len = 1; len <= max_cps && i + len < offs.size(); ++len) {
        probe.assign(doc, offs[i], offs[i + len] - offs[i]);
        auto it = by_display.find(probe);
        if (it != by_display.end()) ++counts[it->second];
      }
    }
  }
  return counts;
}

bool MergeReport::within_target() const noexcept {
  if (!target_size) return true;
  const double target = static_cast<double>(*target_size);
  return std::abs(static_cast<double>(final_size) - target) <= target_tolerance * target;
}

bool MergeReport::consistent() const noexcept {
  return final_size == base_size + added && added + duplicates_skipped + filtered == total_extension_entries;
}

Report MergeReport::to_report() const {
  Report r;
  r.add("base_size", static_cast<std::uint64_t>(base_size))
      .add("added", static_cast<std::uint64_t>(added))
      .add("duplicates_skipped", static_cast<std::uint64_t>(duplicates_skipped))
      .add("filtered", static_cast<std::uint64_t>(filtered))
      .add("final_size", static_cast<std::uint64_t>(final_size))
      .add("total_extension_entries", static_cast<std::uint64_t>(total_extension_entries))
      .add("merge_rules.base", static_cast<std::uint64_t>(base_rules))
      .add("merge_rules.appended", static_cast<std::uint64_t>(appended_rules))
      .add("merge_rules.synthesized", static_cast<std::uint64_t>(synthesized_rules))
      .add("unreachable_tokens", static_cast<std::uint64_t>(unreachable_tokens));
  if (target_size) {
    r.add("target.size", static_cast<std::uint64_t>(*target_size))
        .add("target.tolerance", target_tolerance)
        .add("target.within", within_target());
  }
  r.add("sources", static_cast<std::uint64_t>(sources.size()));
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const auto& s = sources[i];
    const std::string p = "source." + std::to_string(i) + ".";
    r.add(p + "name", s.name)
        .add(p + "entries", static_cast<std::uint64_t>(s.entries))
        .add(p + "added", static_cast<std::uint64_t>(s.added))
        .add(p + "duplicates", static_cast<std::uint64_t>(s.duplicates))
        .add(p + "filtered", static_cast<std::uint64_t>(s.filtered))
        .add(p + "filtered.reserved", static_cast<std::uint64_t>(s.reserved))
        .add(p + "filtered.denied", static_cast<std::uint64_t>(s.denied))
        .add(p + "filtered.below_frequency", static_cast<std::uint64_t>(s.below_frequency))
        .add(p + "filtered.script_rejected", static_cast<std::uint64_t>(s.script_rejected));
  }
  return r;
}

MergeOutcome merge_vocabularies(const bpe::Tokenizer& base, std::span<const ExtensionSource> extensions,
                                const FilterRules& filters, const MergeOptions& options) {
  filters.validate();
  const bpe::Vocabulary& base_vocab = base.vocab();

  MergeReport report;
  report.base_size = base_vocab.size();
  report.base_rules = base.merges().size();
  report.target_size = options.target_size;
  report.target_tolerance = options.tolerance;

  std::vector<Token> tokens(base_vocab.tokens().begin(), base_vocab.tokens().end());
  std::unordered_set<std::string> present;
  present.reserve(base_vocab.size() * 2);
  for (const auto& t : tokens) present.insert(t.bytes);
  std::unordered_set<std::string> added_bytes;

  for (const auto& ext : extensions) {
    SourceBreakdown sb;
    sb.name = ext.name;
    for (TokenId id = 0; id < ext.vocab.size(); ++id) {
      const Token& t = ext.vocab.at(id);
      ++sb.entries;
      if (present.contains(t.bytes)) {
        ++sb.duplicates;
        continue;
      }
      if (t.kind != TokenKind::normal) {
        ++sb.filtered;
        ++sb.reserved;
        continue;
      }
      std::optional<std::uint64_t> freq;
      if (auto it = ext.frequencies.find(t.bytes); it != ext.frequencies.end()) freq = it->second;
      const Verdict v = check_token(filters, t.bytes, freq);
      if (v != Verdict::pass) {
        ++sb.filtered;
        if (v == Verdict::denied) ++sb.denied;
        if (v == Verdict::below_frequency) ++sb.below_frequency;
        if (v == Verdict::script_rejected) ++sb.script_rejected;
        continue;
      }
      present.insert(t.bytes);
      added_bytes.insert(t.bytes);
      tokens.push_back(Token{t.bytes, t.score, TokenKind::normal});
      ++sb.added;
    }
    report.added += sb.added;
    report.duplicates_skipped += sb.duplicates;
    report.filtered += sb.filtered;
    report.total_extension_entries += sb.entries;
    report.sources.push_back(std::move(sb));
  }

  bpe::Vocabulary merged_vocab = bpe::Vocabulary::from_tokens(std::move(tokens));
  report.final_size = merged_vocab.size();

  std::vector<MergeRule> rules(base.merges().rules().begin(), base.merges().rules().end());
  std::unordered_set<std::uint64_t> pairs;
  std::unordered_set<TokenId> produced;
  auto pair_key = [](TokenId l, TokenId r) { return (static_cast<std::uint64_t>(l) << 32) | r; };
  for (const auto& r : rules) {
    pairs.insert(pair_key(r.left, r.right));
    produced.insert(r.result);
  }
  auto try_append = [&](TokenId l, TokenId r, TokenId res) {
    if (!pairs.insert(pair_key(l, r)).second) return false;
    rules.push_back(MergeRule{l, r, res});
    produced.insert(res);
    return true;
  };

  for (const auto& ext : extensions) {
    for (const auto& r : ext.merges.rules()) {
      const auto& res_bytes = ext.vocab.at(r.result).bytes;
      if (!added_bytes.contains(res_bytes)) continue;
      auto l = merged_vocab.find_normal(ext.vocab.at(r.left).bytes);
      auto rt = merged_vocab.find_normal(ext.vocab.at(r.right).bytes);
      auto res = merged_vocab.find_normal(res_bytes);
      if (!l || !rt || !res) continue;
      if (try_append(*l, *rt, *res)) ++report.appended_rules;
    }
  }

  // Shorter tokens first so longer ones can split into reachable halves.
  std::vector<std::pair<std::size_t, TokenId>> pending;
  for (TokenId id = static_cast<TokenId>(report.base_size); id < merged_vocab.size(); ++id) {
    pending.emplace_back(utf8::count_code_points(merged_vocab.at(id).bytes), id);
  }
  std::stable_sort(pending.begin(), pending.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  auto reachable = [&](TokenId id) {
    return produced.contains(id) || utf8::count_code_points(merged_vocab.at(id).bytes) == 1;
  };
  for (const auto& [cps, id] : pending) {
    if (cps <= 1 || produced.contains(id)) continue;
    const std::string& bytes = merged_vocab.at(id).bytes;
    const auto offs = code_point_offsets(bytes);
    std::optional<std::pair<TokenId, TokenId>> fallback_split;
    bool done = false;
    for (std::size_t k = 1; k + 1 < offs.size() && !done; ++k) {
      auto l = merged_vocab.find_normal(std::string_view(bytes).substr(0, offs[k]));
      auto r = merged_vocab.find_normal(std::string_view(bytes).substr(offs[k]));
      if (!l || !r || pairs.contains(pair_key(*l, *r))) continue;
      if (reachable(*l) && reachable(*r)) {
        try_append(*l, *r, id);
        done = true;
      } else if (!fallback_split) {
        fallback_split.emplace(*l, *r);
      }
    }
    if (!done && fallback_split) done = try_append(fallback_split->first, fallback_split->second, id);
    if (done) ++report.synthesized_rules;
    else ++report.unreachable_tokens;
  }

  bpe::MergeRuleList merged_rules = bpe::MergeRuleList::create(merged_vocab, std::move(rules));
  return MergeOutcome{bpe::Tokenizer(std::move(merged_vocab), std::move(merged_rules)), std::move(report)};
}

}  // namespace forge::extend
