#include "merge_oracle.hpp"

#include <set>
#include <sstream>

#include "forge/bpe/trainer.hpp"

namespace forge::testing {
namespace {

const std::vector<std::string> kPool = {"a", "b", "c", "d", "ab", "bc", "abc", "cd", "da",
                                        "\xE4\xBD\xA0", "\xE5\xA5\xBD", "\xE4\xBD\xA0\xE5\xA5\xBD", "\xE2\x96\x81" "a",
                                        "x", "xy", "\xCE\xB1", "\xCE\xB1\xCE\xB2", "1", "12"};

std::vector<std::string> some_tokens(Rng& rng, std::size_t max) {
  std::uniform_int_distribution<std::size_t> n(0, max);
  std::uniform_int_distribution<std::size_t> pick(0, kPool.size() - 1);
  std::vector<std::string> out;
  const std::size_t count = n(rng);
  for (std::size_t i = 0; i < count; ++i) out.push_back(kPool[pick(rng)]);
  return out;
}

bpe::Tokenizer tokenizer_from(const std::vector<std::string>& tokens, const std::vector<std::string>& specials) {
  std::vector<bpe::Token> normals;
  std::set<std::string> seen;
  for (const auto& t : tokens) {
    if (seen.insert(t).second) normals.push_back(bpe::Token{t, -1.0, bpe::TokenKind::normal});
  }
  return bpe::Tokenizer(bpe::Vocabulary::create(specials, std::move(normals)), {});
}

}  // namespace

MergeCase random_merge_case(Rng& rng) {
  MergeCase c;
  std::uniform_int_distribution<int> coin(0, 3);
  if (coin(rng) == 0) {
    std::vector<std::string> corpus;
    for (int i = 0; i < 5; ++i) corpus.push_back(random_training_doc(rng, 60));
    bpe::TrainerOptions o;
    o.target_vocab_size = 300;
    o.normalize = false;
    c.base = bpe::train_bpe(corpus, o).tokenizer;
  } else {
    c.base = tokenizer_from(some_tokens(rng, 10), bpe::default_specials());
  }
  std::uniform_int_distribution<int> nexts(1, 3);
  const int n = nexts(rng);
  for (int e = 0; e < n; ++e) {
    const std::string name = "ext" + std::to_string(e);
    switch (coin(rng)) {
      case 0: {
        std::vector<std::string> corpus;
        for (int i = 0; i < 4; ++i) corpus.push_back(random_training_doc(rng, 50));
        bpe::TrainerOptions o;
        o.target_vocab_size = 290;
        o.normalize = false;
        o.specials = {"<s>", "<ext>"};
        c.extensions.push_back(extend::source_from_tokenizer(name, bpe::train_bpe(corpus, o).tokenizer));
        break;
      }
      case 1:
        c.extensions.push_back(extend::source_from_tokenizer(name, tokenizer_from(some_tokens(rng, 12), {"<pad>", "<m>"})));
        break;
      default: {
        auto toks = some_tokens(rng, 12);
        c.extensions.push_back(extend::source_from_tokens(name, toks));
        break;
      }
    }
    if (coin(rng) == 0) {
      for (const auto& t : some_tokens(rng, 6)) c.extensions.back().frequencies[t] = static_cast<std::uint64_t>(coin(rng));
    }
  }
  switch (coin(rng)) {
    case 0: c.filters.min_frequency = 2; break;
    case 1: c.filters.allowed_scripts = {"Latin"}; break;
    case 2:
      c.filters.deny_list = {"ab", "\xE5\xA5\xBD"};
      c.filters.allow_list = {"xy"};
      break;
    default: break;
  }
  return c;
}

std::string check_merge_contract(const MergeCase& c, const extend::MergeOutcome& outcome) {
  std::ostringstream err;
  const auto& base = c.base.vocab();
  const auto& merged = outcome.merged.vocab();
  const auto& rep = outcome.report;

  if (merged.size() < base.size()) return "merged vocabulary smaller than base";
  for (bpe::TokenId id = 0; id < base.size(); ++id) {
    if (merged.at(id).bytes != base.at(id).bytes || merged.at(id).kind != base.at(id).kind) {
      err << "base id " << id << " moved";
      return err.str();
    }
  }

  std::set<std::string> present;
  for (const auto& t : base.tokens()) present.insert(t.bytes);
  std::vector<std::string> expected_new;
  std::size_t total = 0, dup = 0, filtered = 0;
  for (const auto& ext : c.extensions) {
    for (const auto& t : ext.vocab.tokens()) {
      ++total;
      if (present.count(t.bytes)) {
        ++dup;
        continue;
      }
      if (t.kind != bpe::TokenKind::normal) {
        ++filtered;
        continue;
      }
      std::optional<std::uint64_t> f;
      if (auto it = ext.frequencies.find(t.bytes); it != ext.frequencies.end()) f = it->second;
      if (extend::check_token(c.filters, t.bytes, f) != extend::Verdict::pass) {
        ++filtered;
        continue;
      }
      present.insert(t.bytes);
      expected_new.push_back(t.bytes);
    }
  }
  if (merged.size() != base.size() + expected_new.size()) {
    err << "size " << merged.size() << " != " << base.size() << " + " << expected_new.size();
    return err.str();
  }
  for (std::size_t i = 0; i < expected_new.size(); ++i) {
    const auto id = static_cast<bpe::TokenId>(base.size() + i);
    if (merged.at(id).bytes != expected_new[i] || !merged.is_normal(id)) {
      err << "new id " << id << " holds the wrong token";
      return err.str();
    }
  }
  if (rep.base_size != base.size() || rep.final_size != merged.size() || rep.added != expected_new.size() ||
      rep.duplicates_skipped != dup || rep.filtered != filtered || rep.total_extension_entries != total) {
    return "report totals disagree with recount";
  }
  if (!rep.consistent()) return "report not self-consistent";
  if (rep.added + rep.duplicates_skipped + rep.filtered != rep.total_extension_entries) return "entry arithmetic broken";

  // Base rules survive as the rank prefix.
  const auto& base_rules = c.base.merges().rules();
  const auto& rules = outcome.merged.merges().rules();
  if (rules.size() < base_rules.size()) return "rules lost";
  for (std::size_t i = 0; i < base_rules.size(); ++i) {
    if (!(rules[i] == base_rules[i])) return "base rule rank changed";
  }
  for (std::size_t i = base_rules.size(); i < rules.size(); ++i) {
    if (rules[i].result < base.size()) return "appended rule produces a base token";
  }
  return {};
}

}  // namespace forge::testing
