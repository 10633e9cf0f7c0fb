#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <map>
#include <numeric>

#include "forge/error.hpp"
#include "forge/mixture/alias.hpp"
#include "forge/mixture/builtin.hpp"
#include "forge/mixture/epoch.hpp"
#include "forge/mixture/sampler.hpp"
#include "forge/mixture/spec.hpp"
#include "forge/mixture/stages.hpp"
#include "forge/text.hpp"
#include "temp_dir.hpp"

using namespace forge;
using namespace forge::mixture;

namespace {

// Pearson statistic against the normalized weights; true when the test
// does not reject at the given significance.
bool chi_squared_accepts(const std::vector<std::uint64_t>& counts, std::span<const double> p, double alpha) {
  double n = 0;
  for (auto c : counts) n += static_cast<double>(c);
  double stat = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double e = n * p[i];
    stat += (static_cast<double>(counts[i]) - e) * (static_cast<double>(counts[i]) - e) / e;
  }
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return stat <= boost::math::quantile(boost::math::complement(dist, alpha));
}

DatasetManifest manifest(const std::string& name, std::uint64_t count) {
  DatasetManifest m;
  m.name = name;
  m.record_count = count;
  return m;
}

std::vector<DatasetManifest> manifests_for(const std::vector<StageSpec>& stages) {
  std::vector<DatasetManifest> out;
  for (const auto& s : stages) {
    for (const auto& src : s.sources) out.push_back(manifest(src.name, src.declared));
  }
  return out;
}

}  // namespace

TEST(MixtureSpec, OxeRawSumAndNormalization) {
  const auto spec = oxe_vla_mixture();
  EXPECT_EQ(spec.size(), 23u);
  EXPECT_NEAR(spec.raw_sum(), 99.98, 1e-9);
  EXPECT_NEAR(spec.normalized()[0], 12.35 / 99.98, 1e-15);
  EXPECT_NEAR(spec.normalized()[0], 0.123525, 1e-6);
  EXPECT_EQ(spec.name(22), "FurnitureBench");
  EXPECT_NEAR(std::accumulate(spec.normalized().begin(), spec.normalized().end(), 0.0), 1.0, 1e-12);
}

TEST(MixtureSpec, DataFileMatchesBuiltin) {
  const auto file = load_mixture_spec(std::string(FORGE_DATA_DIR) + "/oxe_vla_mixture.tsv");
  const auto builtin = oxe_vla_mixture();
  ASSERT_EQ(file.size(), builtin.size());
  for (std::size_t i = 0; i < file.size(); ++i) {
    EXPECT_EQ(file.name(i), builtin.name(i));
    EXPECT_EQ(file.entries()[i].weight, builtin.entries()[i].weight);
  }
  const auto stages = load_stages(std::string(FORGE_DATA_DIR) + "/llava_v15_stages.tsv");
  EXPECT_EQ(serialize_stages(stages), serialize_stages(llava_v15_stages()));
}

TEST(MixtureSpec, TrivialWeights) {
  EXPECT_EQ(MixtureSpec({{"only", 100}}).normalized()[0], 1.0);
  const MixtureSpec half({{"a", 50}, {"b", 50}});
  EXPECT_EQ(half.normalized()[0], 0.5);
  EXPECT_EQ(half.normalized()[1], 0.5);
}

TEST(MixtureSpec, Errors) {
  EXPECT_THROW(MixtureSpec({{"a", 0}}), ValidationError);
  EXPECT_THROW(MixtureSpec({{"a", -1}}), ValidationError);
  EXPECT_THROW(MixtureSpec({{"a", 1}, {"a", 2}}), ValidationError);
  EXPECT_THROW(MixtureSpec(std::vector<MixtureEntry>{}), ValidationError);
  EXPECT_THROW(parse_mixture_spec("#mixture-v1\na\t1\na\t2\n"), ParseError);
  EXPECT_THROW(parse_mixture_spec("#mixture-v1\na\t0\n"), ParseError);
  EXPECT_THROW(parse_mixture_spec("a\t1\n"), ParseError);
  try {
    parse_mixture_spec("#mixture-v1\na\t1\nb\tx\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(MixtureSpec, SerializeRoundTrip) {
  const MixtureSpec spec({{"x y", 1.5}, {"z", 2.25}}, 1000);
  const auto back = parse_mixture_spec(serialize_mixture_spec(spec));
  EXPECT_EQ(back.declared_total(), 1000u);
  EXPECT_EQ(back.entries()[0].name, "x y");
  EXPECT_EQ(back.entries()[1].weight, 2.25);
}

TEST(Alias, ReconstructsWeightsExactly) {
  const auto spec = oxe_vla_mixture();
  const AliasTable table(spec.normalized());
  const auto rec = table.reconstructed();
  for (std::size_t i = 0; i < spec.size(); ++i) EXPECT_NEAR(rec[i], spec.normalized()[i], 1e-12);
  EXPECT_NEAR(std::accumulate(rec.begin(), rec.end(), 0.0), 1.0, 1e-12);

  std::vector<double> skewed = {1e-9, 1.0, 3.0, 1e-3, 7.0, 0.5};
  const double total = std::accumulate(skewed.begin(), skewed.end(), 0.0);
  const AliasTable t2(skewed);
  const auto r2 = t2.reconstructed();
  for (std::size_t i = 0; i < skewed.size(); ++i) EXPECT_NEAR(r2[i], skewed[i] / total, 1e-12);
}

TEST(Alias, RejectsBadWeights) {
  EXPECT_THROW(AliasTable(std::vector<double>{}), ValidationError);
  EXPECT_THROW(AliasTable(std::vector<double>{1.0, -1.0}), ValidationError);
}

TEST(Sampler, SingleDatasetAlwaysChosen) {
  const MixtureSampler s(MixtureSpec({{"only", 3}}));
  SamplerState st{5, 0};
  for (int i = 0; i < 100; ++i) EXPECT_EQ(s.sample(st), "only");
  EXPECT_EQ(st.draw_count, 100u);
}

TEST(Sampler, SameSeedSameSequenceDifferentSeedDiffers) {
  const MixtureSampler s(oxe_vla_mixture());
  SamplerState a{42, 0}, b{42, 0}, c{43, 0};
  std::vector<std::size_t> sa, sb, sc;
  for (int i = 0; i < 1000; ++i) {
    sa.push_back(s.next_index(a));
    sb.push_back(s.next_index(b));
    sc.push_back(s.next_index(c));
  }
  EXPECT_EQ(sa, sb);
  EXPECT_NE(sa, sc);
}

TEST(Sampler, RestoreMidStreamContinuesIdentically) {
  SeededSampler s(oxe_vla_mixture(), 9);
  for (int i = 0; i < 137; ++i) s.next();
  const std::string saved = s.state().serialize();
  EXPECT_EQ(saved, "sampler-v1 seed=9 draw_count=137");
  std::vector<std::string> expected;
  for (int i = 0; i < 500; ++i) expected.push_back(s.next());
  SeededSampler fresh(oxe_vla_mixture(), 0);
  fresh.restore(SamplerState::parse(saved));
  for (int i = 0; i < 500; ++i) ASSERT_EQ(fresh.next(), expected[static_cast<std::size_t>(i)]);
  EXPECT_THROW(SamplerState::parse("sampler-v1 seed=x draw_count=1"), ValidationError);
}

TEST(Sampler, HistogramIndependentOfThreads) {
  const MixtureSampler s(oxe_vla_mixture());
  const SamplerState st{7, 11};
  const auto one = s.histogram(st, 200'000, 1);
  EXPECT_EQ(s.histogram(st, 200'000, 3), one);
  EXPECT_EQ(s.histogram(st, 200'000, 8), one);
  std::vector<std::uint64_t> serial(s.spec().size(), 0);
  SamplerState walk = st;
  for (int i = 0; i < 200'000; ++i) ++serial[s.next_index(walk)];
  EXPECT_EQ(serial, one);
}

TEST(Sampler, ChiSquaredDoesNotReject) {
  const std::vector<MixtureSpec> specs = {oxe_vla_mixture(), MixtureSpec({{"a", 1}, {"b", 2}, {"c", 97}}),
                                          MixtureSpec({{"x", 0.001}, {"y", 0.333}, {"z", 5}, {"w", 5}})};
  for (const auto& spec : specs) {
    const MixtureSampler s(spec);
    const auto counts = s.histogram(SamplerState{2024, 0}, 1'000'000);
    EXPECT_TRUE(chi_squared_accepts(counts, spec.normalized(), 0.001));
  }
}

TEST(Sampler, StreamsAreDistinct) {
  EXPECT_EQ(SamplerState::for_stream(5, 0).seed, 5u);
  EXPECT_NE(SamplerState::for_stream(5, 1).seed, SamplerState::for_stream(5, 2).seed);
}

TEST(RecordStream, VisitsEveryRecordPerEpoch) {
  const MixtureSpec spec({{"a", 1}, {"b", 1}});
  RecordStream rs(spec, {3, 5}, 17);
  std::map<std::pair<std::size_t, std::uint64_t>, std::map<std::uint64_t, int>> seen;
  for (int i = 0; i < 400; ++i) {
    const auto d = rs.next();
    ASSERT_LT(d.record, d.dataset == 0 ? 3u : 5u);
    ++seen[{d.dataset, d.epoch}][d.record];
  }
  // Completed epochs hold each record exactly once.
  for (const auto& [key, recs] : seen) {
    const std::uint64_t n = key.first == 0 ? 3 : 5;
    if (recs.size() == n) {
      for (const auto& [r, c] : recs) EXPECT_EQ(c, 1) << r;
    }
  }
  EXPECT_THROW(RecordStream(spec, {3}, 1), ValidationError);
  EXPECT_THROW(RecordStream(spec, {3, 0}, 1), ValidationError);
}

TEST(Epoch, SingleRecordTwoEpochs) {
  EXPECT_EQ(epoch_plan(1, 2, 0), (std::vector<std::uint64_t>{0, 0}));
  EXPECT_EQ(kDefaultEpochs, 2u);
}

TEST(Epoch, EachIndexOncePerEpoch) {
  for (std::uint64_t n : {5u, 17u, 1000u}) {
    const auto plan = epoch_plan(n, 3, 123);
    ASSERT_EQ(plan.size(), 3 * n);
    for (std::uint64_t e = 0; e < 3; ++e) {
      std::vector<std::uint64_t> part(plan.begin() + static_cast<std::ptrdiff_t>(e * n),
                                      plan.begin() + static_cast<std::ptrdiff_t>((e + 1) * n));
      std::sort(part.begin(), part.end());
      for (std::uint64_t i = 0; i < n; ++i) EXPECT_EQ(part[i], i);
    }
  }
  const auto p = epoch_plan(1000, 2, 5);
  EXPECT_FALSE(std::equal(p.begin(), p.begin() + 1000, p.begin() + 1000));
}

TEST(Epoch, LazyPlanMatchesVectorAndErrors) {
  EpochPlan lazy(50, 2, 8);
  const auto full = epoch_plan(50, 2, 8);
  for (auto v : full) EXPECT_EQ(lazy.next(), v);
  EXPECT_TRUE(lazy.done());
  EXPECT_THROW(lazy.next(), ValidationError);
  EXPECT_THROW(EpochPlan(0, 2, 1), ValidationError);
  EXPECT_THROW(EpochPlan(3, 0, 1), ValidationError);
}

TEST(Epoch, IndexStreamIsLittleEndian) {
  const std::vector<std::uint64_t> v = {1, 0x0102030405060708ull};
  const auto enc = encode_index_stream(v);
  ASSERT_EQ(enc.size(), 16u);
  EXPECT_EQ(static_cast<unsigned char>(enc[0]), 1);
  EXPECT_EQ(static_cast<unsigned char>(enc[8]), 0x08);
  EXPECT_EQ(static_cast<unsigned char>(enc[15]), 0x01);
  forge::testing::TempDir dir;
  write_index_stream(dir / "idx.bin", v);
  EXPECT_EQ(read_index_stream(dir / "idx.bin"), v);
}

TEST(Stages, DeclaredCountsGiveOneInstructWarning) {
  const auto stages = llava_v15_stages();
  const auto plan = assemble_staged_mixture(stages, manifests_for(stages));
  ASSERT_EQ(plan.warnings.size(), 1u);
  const auto& w = plan.warnings[0];
  EXPECT_EQ(w.stage, StageId::instruct);
  EXPECT_EQ(w.scope, CountWarning::Scope::stage);
  EXPECT_EQ(w.declared, 665'000u);
  EXPECT_EQ(w.actual, 610'000u);
  EXPECT_EQ(w.delta, 55'000);
  EXPECT_EQ(plan.stages[0].actual_total, 558'000u);
  EXPECT_NEAR(plan.stages[1].sources[0].weight, 158.0 / 610.0, 1e-15);
  const auto mix = plan.stages[1].mixture();
  EXPECT_EQ(mix.size(), 6u);
}

TEST(Stages, SourceMismatchReportedNotFixed) {
  const auto stages = llava_v15_stages();
  auto ms = manifests_for(stages);
  ms[0].record_count = 557'000;
  const auto plan = assemble_staged_mixture(stages, ms);
  ASSERT_EQ(plan.warnings.size(), 3u);
  EXPECT_EQ(plan.warnings[0].scope, CountWarning::Scope::source);
  EXPECT_EQ(plan.warnings[0].delta, 1000);
  EXPECT_EQ(plan.warnings[1].scope, CountWarning::Scope::stage);
  EXPECT_EQ(plan.stages[0].actual_total, 557'000u);
  EXPECT_EQ(plan.to_report().get("warnings"), "3");
}

TEST(Stages, Errors) {
  const auto stages = llava_v15_stages();
  EXPECT_THROW(assemble_staged_mixture(stages, {}), ValidationError);
  auto ms = manifests_for(stages);
  ms.pop_back();
  EXPECT_THROW(assemble_staged_mixture(stages, ms), ValidationError);
  std::vector<StageSpec> empty_stage = {StageSpec{StageId::captioning, {}, 0}};
  EXPECT_THROW(assemble_staged_mixture(empty_stage, manifests_for(stages)), ValidationError);
  EXPECT_THROW(parse_stages("#stages-v1\nsource\tx\t1\n"), ParseError);
  EXPECT_THROW(parse_stages("#stages-v1\nstage\tfinetune\t1\n"), ParseError);
}
