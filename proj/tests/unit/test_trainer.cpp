#include <gtest/gtest.h>

#include <set>

#include "forge/bpe/io.hpp"
#include "forge/bpe/trainer.hpp"
#include "forge/error.hpp"
#include "gen.hpp"
#include "naive_bpe.hpp"

using namespace forge;
using namespace forge::bpe;

namespace {

std::vector<std::pair<std::string, std::string>> rule_strings(const Tokenizer& tok) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& r : tok.merges().rules()) out.emplace_back(tok.vocab().at(r.left).bytes, tok.vocab().at(r.right).bytes);
  return out;
}

std::vector<std::string> normal_tokens(const Tokenizer& tok) {
  std::vector<std::string> out;
  for (TokenId id = tok.vocab().first_normal(); id < tok.vocab().size(); ++id) out.push_back(tok.vocab().at(id).bytes);
  return out;
}

TrainerOptions opts_for(std::size_t size, bool normalize = false) {
  TrainerOptions o;
  o.target_vocab_size = size;
  o.normalize = normalize;
  return o;
}

void expect_matches_oracle(const std::vector<std::string>& corpus, std::size_t target) {
  const auto result = train_bpe(corpus, opts_for(target));
  const auto oracle = forge::testing::naive_train(corpus, target, default_specials(), 2);
  EXPECT_EQ(rule_strings(result.tokenizer), oracle.rules);
  EXPECT_EQ(normal_tokens(result.tokenizer), oracle.tokens);
  const auto& v = result.tokenizer.vocab();
  for (std::size_t i = 0; i < oracle.scores.size(); ++i) {
    EXPECT_DOUBLE_EQ(v.at(v.first_normal() + static_cast<TokenId>(i)).score, oracle.scores[i]);
  }
}

}  // namespace

TEST(Trainer, SingleMergeBudgetMergesAA) {
  auto result = train_bpe(std::vector<std::string>{"aaaa"}, opts_for(4 + 256 + 1 + 1));
  ASSERT_EQ(result.tokenizer.merges().size(), 1u);
  const auto rules = rule_strings(result.tokenizer);
  EXPECT_EQ(rules[0], std::make_pair(std::string("a"), std::string("a")));
  EXPECT_EQ(normal_tokens(result.tokenizer).back(), "aa");
  EXPECT_EQ(result.stats.stop, StopReason::target_reached);
}

TEST(Trainer, LowLowerNewestMatchesOracle) {
  const std::vector<std::string> corpus = {"low low low low low", "lower lower",
                                           "newest newest newest newest newest newest"};
  expect_matches_oracle(corpus, 300);
  expect_matches_oracle(corpus, 280);
}

TEST(Trainer, NoBudgetMeansNoMerges) {
  const std::vector<std::string> corpus = {"abcabc abc"};
  const std::size_t floor = minimum_vocab_size(corpus, opts_for(0));
  EXPECT_EQ(floor, 4u + 256u + 4u);  // a b c and the boundary marker
  auto result = train_bpe(corpus, opts_for(floor));
  EXPECT_EQ(result.tokenizer.merges().size(), 0u);
  EXPECT_EQ(result.tokenizer.vocab().size(), floor);
}

TEST(Trainer, Errors) {
  EXPECT_THROW(train_bpe(std::vector<std::string>{}, opts_for(1000)), ValidationError);
  EXPECT_THROW(train_bpe(std::vector<std::string>{"", ""}, opts_for(1000)), ValidationError);
  EXPECT_THROW(train_bpe(std::vector<std::string>{"abc"}, opts_for(262)), ValidationError);
  auto bad = opts_for(1000);
  bad.specials = {"<s>", "<s>"};
  EXPECT_THROW(train_bpe(std::vector<std::string>{"abc"}, bad), ValidationError);
}

TEST(Trainer, ReservedConcatenationNeverMerged) {
  // "<0x41>" written out as text must not become a token.
  std::vector<std::string> corpus(20, "<0x41><0x41> <s><s>");
  auto result = train_bpe(corpus, opts_for(400));
  for (const auto& t : normal_tokens(result.tokenizer)) {
    EXPECT_NE(t, "<0x41>");
    EXPECT_NE(t, "<s>");
  }
  expect_matches_oracle(corpus, 400);
}

TEST(Trainer, ExistingResultAddsRuleOnly) {
  // "ab"+"c" and "a"+"bc" both yield "abc"; the second adds no token.
  std::vector<std::string> corpus = {"abc abc abc bcx bcx bcx bcx abx abx abx abx abx"};
  expect_matches_oracle(corpus, 300);
  const auto result = train_bpe(corpus, opts_for(300));
  const auto tokens = normal_tokens(result.tokenizer);
  EXPECT_EQ(std::set<std::string>(tokens.begin(), tokens.end()).size(), tokens.size());
}

TEST(Trainer, MinFrequencyStops) {
  auto o = opts_for(1000);
  auto result = train_bpe(std::vector<std::string>{"abcdefg"}, o);
  EXPECT_EQ(result.tokenizer.merges().size(), 0u);
  EXPECT_EQ(result.stats.stop, StopReason::below_min_frequency);
  o.min_pair_frequency = 1;
  result = train_bpe(std::vector<std::string>{"abcdefg"}, o);
  EXPECT_EQ(result.tokenizer.merges().size(), 6u);
  EXPECT_EQ(result.stats.stop, StopReason::no_pairs);
}

TEST(Trainer, NfkcAppliedToCorpus) {
  // Fullwidth letters fold to ASCII under NFKC.
  const std::vector<std::string> corpus = {"\xEF\xBC\xA1\xEF\xBC\xA1 AA"};
  auto normalized = train_bpe(corpus, opts_for(300, true));
  EXPECT_TRUE(normalized.tokenizer.vocab().find("A").has_value());
  EXPECT_FALSE(normalized.tokenizer.vocab().find("\xEF\xBC\xA1").has_value());
  auto raw = train_bpe(corpus, opts_for(300, false));
  EXPECT_TRUE(raw.tokenizer.vocab().find("\xEF\xBC\xA1").has_value());
}

TEST(Trainer, DeterministicAcrossThreadCounts) {
  forge::testing::Rng rng(11);
  std::vector<std::string> corpus;
  for (int i = 0; i < 300; ++i) corpus.push_back(forge::testing::random_training_doc(rng, 80));
  auto o = opts_for(600, true);
  o.threads = 1;
  const auto one = train_bpe(corpus, o).tokenizer;
  for (std::size_t t : {2u, 4u, 7u}) {
    o.threads = t;
    const auto many = train_bpe(corpus, o).tokenizer;
    EXPECT_EQ(serialize_vocab(many.vocab()), serialize_vocab(one.vocab()));
    EXPECT_EQ(serialize_merges(many.vocab(), many.merges()), serialize_merges(one.vocab(), one.merges()));
  }
}

TEST(Trainer, FrequencyOrderNonIncreasing) {
  forge::testing::Rng rng(5);
  for (int c = 0; c < 40; ++c) {
    const auto corpus = forge::testing::random_training_corpus(rng, 1000);
    const auto oracle = forge::testing::naive_train(corpus, 400, default_specials(), 2);
    for (std::size_t i = 1; i < oracle.selection_counts.size(); ++i) {
      EXPECT_GE(oracle.selection_counts[i - 1], oracle.selection_counts[i]) << "corpus " << c << " selection " << i;
    }
  }
}

TEST(Trainer, RandomCorporaMatchOracle) {
  forge::testing::Rng rng(2024);
  for (int c = 0; c < 25; ++c) {
    const auto corpus = forge::testing::random_training_corpus(rng, 1000);
    expect_matches_oracle(corpus, 360);
  }
}
