#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "forge/action/trajectory.hpp"
#include "forge/cli/cli.hpp"
#include "forge/mixture/manifest.hpp"
#include "forge/report.hpp"
#include "forge/text.hpp"
#include "gen.hpp"
#include "temp_dir.hpp"

using namespace forge;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Report report() const { return Report::parse(out); }
};

Result forge_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(FORGE_DATA_DIR) + "/" + name; }

// Report without config.* and output path lines, which differ between runs.
std::string body(const std::string& structured) {
  std::string out;
  for (const auto& line : text::split_lines(structured)) {
    if (line.rfind("config.", 0) == 0 || line.find("_file=") != std::string_view::npos) continue;
    out += std::string(line) + '\n';
  }
  return out;
}

void write_corpus(const std::filesystem::path& p, std::uint64_t seed) {
  forge::testing::Rng rng(seed);
  std::string c;
  for (int i = 0; i < 60; ++i) c += forge::testing::random_training_doc(rng, 40) + '\n';
  c += "low lower lowest newer newest wider\n";
  text::write_file(p, c);
}

void write_manifest(const std::filesystem::path& p, const std::string& name, std::uint64_t count) {
  mixture::DatasetManifest m;
  m.name = name;
  m.format = "jsonl";
  m.record_count = count;
  m.shards.push_back({"shard-0.jsonl", count, mixture::sha256(name)});
  mixture::save_manifest(m, p);
}

}  // namespace

TEST(Cli, VersionAndHelp) {
  auto v = forge_run({"--version"});
  EXPECT_EQ(v.code, cli::kExitOk);
  EXPECT_NE(v.out.find(cli::version()), std::string::npos);
  auto h = forge_run({"--help"});
  EXPECT_EQ(h.code, cli::kExitOk);
  EXPECT_NE(h.out.find("train-bpe"), std::string::npos);
}

TEST(Cli, UnknownFlagPrintsUsageAndFails) {
  auto r = forge_run({"latency", "--k", "8", "--dims", "7", "--cost", "0.01", "--bogus"});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_NE((r.out + r.err).find("Usage"), std::string::npos);
  EXPECT_EQ(forge_run({"latency", "--k", "8"}).code, cli::kExitValidation);
  EXPECT_EQ(forge_run({}).code, cli::kExitValidation);
}

TEST(Cli, IoErrorExitCode) {
  forge::testing::TempDir dir;
  auto r = forge_run({"train-bpe", "--corpus", (dir / "missing.txt").string(), "--vocab-size", "300", "--vocab-out",
                      (dir / "v.vocab").string()});
  EXPECT_EQ(r.code, cli::kExitIo);
  EXPECT_NE(r.err.find("I/O error"), std::string::npos);
}

TEST(Cli, ValidationErrorExitCode) {
  auto r = forge_run({"latency", "--k", "8", "--dims", "7", "--cost", "-1"});
  EXPECT_EQ(r.code, cli::kExitValidation);
  EXPECT_NE(r.err.find("forge: error"), std::string::npos);
}

TEST(Cli, LatencyReport) {
  auto r = forge_run({"latency", "--k", "8", "--dims", "7", "--cost", "0.01", "--overhead", "1.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = r.report();
  EXPECT_EQ(rep.get("tool"), "forge");
  EXPECT_EQ(rep.get("subcommand"), "latency");
  EXPECT_EQ(rep.get("config.k"), "8");
  EXPECT_NEAR(std::stod(rep.get("autoregressive.per_chunk_s")), 0.56, 1e-12);
  EXPECT_NEAR(std::stod(rep.get("parallel.per_chunk_s")), 0.012, 1e-12);
  EXPECT_EQ(rep.get("parallel_faster"), "true");
  EXPECT_EQ(rep.get("status"), "ok");
}

TEST(Cli, HumanFormatAndOutFile) {
  forge::testing::TempDir dir;
  auto h = forge_run({"--format", "human", "latency", "--k", "2", "--dims", "2", "--cost", "1"});
  ASSERT_EQ(h.code, 0);
  EXPECT_EQ(h.out.find("subcommand="), std::string::npos);
  EXPECT_NE(h.out.find("latency"), std::string::npos);
  auto f = forge_run({"--out", (dir / "r.txt").string(), "latency", "--k", "2", "--dims", "2", "--cost", "1"});
  ASSERT_EQ(f.code, 0);
  EXPECT_TRUE(f.out.empty());
  EXPECT_EQ(Report::parse(text::read_file(dir / "r.txt")).get("status"), "ok");
}

TEST(Cli, TrainIsByteIdenticalAcrossRunsAndThreads) {
  forge::testing::TempDir dir;
  write_corpus(dir / "c.txt", 5);
  auto a = forge_run({"--threads", "1", "train-bpe", "--corpus", (dir / "c.txt").string(), "--vocab-size", "340",
                      "--seed", "7", "--vocab-out", (dir / "a.vocab").string()});
  auto b = forge_run({"--threads", "4", "train-bpe", "--corpus", (dir / "c.txt").string(), "--vocab-size", "340",
                      "--seed", "7", "--vocab-out", (dir / "b.vocab").string()});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(text::read_file(dir / "a.vocab"), text::read_file(dir / "b.vocab"));
  EXPECT_EQ(text::read_file(dir / "a.vocab.merges"), text::read_file(dir / "b.vocab.merges"));
  EXPECT_EQ(a.report().get("config.seed"), "7");
  EXPECT_EQ(a.report().get("merges"), b.report().get("merges"));
}

TEST(Cli, MergePlanAndEfficiencyPipeline) {
  forge::testing::TempDir dir;
  write_corpus(dir / "c.txt", 9);
  ASSERT_EQ(forge_run({"train-bpe", "--corpus", (dir / "c.txt").string(), "--vocab-size", "300", "--vocab-out",
                       (dir / "base.vocab").string()})
                .code,
            0);
  text::write_file(dir / "list.txt", "lowest\nnewest\nwider\n");
  auto m = forge_run({"merge-vocab", "--base", (dir / "base.vocab").string(), "--extend-list",
                      (dir / "list.txt").string(), "--vocab-out", (dir / "merged.vocab").string()});
  ASSERT_EQ(m.code, 0) << m.err;
  auto p = forge_run({"plan-embed", "--base", (dir / "base.vocab").string(), "--merged",
                      (dir / "merged.vocab").string(), "--plan-out", (dir / "plan.tsv").string()});
  ASSERT_EQ(p.code, 0) << p.err;
  auto e = forge_run({"eval-efficiency", "--vocab", (dir / "base.vocab").string(), "--extended",
                      (dir / "merged.vocab").string(), "--corpus", (dir / "c.txt").string()});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_GE(std::stod(e.report().get("improvement_ratio")), 1.0);
  auto missing = forge_run({"merge-vocab", "--base", (dir / "base.vocab").string(), "--vocab-out",
                            (dir / "x.vocab").string()});
  EXPECT_EQ(missing.code, cli::kExitValidation);
}

TEST(Cli, MixtureValidateBuiltinData) {
  forge::testing::TempDir dir;
  const std::vector<std::pair<std::string, std::uint64_t>> sources = {
      {"Captioning Mixture", 558000},       {"LLaVa Synthetic Data", 158000},
      {"Standard VQA Data", 224000},        {"Multiple Choice VQA Data", 50000},
      {"Captioning Data", 22000},           {"Referring Expression Data", 116000},
      {"ShareGPT (Language-Only)", 40000}};
  std::vector<std::string> args = {"mixture-validate", "--spec", data("oxe_vla_mixture.tsv"), "--stages",
                                   data("llava_v15_stages.tsv")};
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const auto p = dir / ("m" + std::to_string(i) + ".manifest");
    write_manifest(p, sources[i].first, sources[i].second);
    args.push_back("--manifest");
    args.push_back(p.string());
  }
  auto r = forge_run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = r.report();
  EXPECT_NEAR(std::stod(rep.get("spec.raw_sum")), 99.98, 1e-9);
  EXPECT_NEAR(std::stod(rep.get("spec.normalized_sum")), 1.0, 1e-12);
  EXPECT_EQ(rep.get("staged.warnings"), "1");
  EXPECT_EQ(rep.get("staged.warning.0.stage"), "instruct");
  EXPECT_EQ(rep.get("staged.warning.0.delta"), "55000");
}

TEST(Cli, MixtureValidateVerifyFailsOnTamperedShard) {
  forge::testing::TempDir dir;
  text::write_file(dir / "s.jsonl", "{\"a\":1}\n{\"a\":2}\n");
  const std::vector<std::string> shards = {"s.jsonl"};
  mixture::save_manifest(mixture::build_manifest("d", "jsonl", dir.path(), shards), dir / "d.manifest");
  auto ok = forge_run({"mixture-validate", "--manifest", (dir / "d.manifest").string(), "--verify"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  text::write_file(dir / "s.jsonl", "{\"a\":1}\n{\"a\":3}\n");
  auto bad = forge_run({"mixture-validate", "--manifest", (dir / "d.manifest").string(), "--verify"});
  EXPECT_EQ(bad.code, cli::kExitValidation);
  EXPECT_EQ(bad.report().get("status"), "failed");
  EXPECT_EQ(bad.report().get("manifest.0.shard.0.status"), "digest_mismatch");
}

TEST(Cli, SampleAndEpochPlanIndependentOfThreads) {
  forge::testing::TempDir dir;
  auto s1 = forge_run({"--threads", "1", "mixture-sample", "--spec", data("oxe_vla_mixture.tsv"), "--draws", "200000",
                       "--seed", "42", "--sequence-out", (dir / "s1.bin").string()});
  auto s8 = forge_run({"--threads", "8", "mixture-sample", "--spec", data("oxe_vla_mixture.tsv"), "--draws", "200000",
                       "--seed", "42", "--sequence-out", (dir / "s8.bin").string()});
  ASSERT_EQ(s1.code, 0) << s1.err;
  ASSERT_EQ(s8.code, 0) << s8.err;
  EXPECT_EQ(body(s1.out), body(s8.out));
  EXPECT_EQ(text::read_file(dir / "s1.bin"), text::read_file(dir / "s8.bin"));
  EXPECT_EQ(s1.report().get("within_tolerance"), "true");

  auto e1 = forge_run({"--threads", "1", "epoch-plan", "--records", "5000", "--epochs", "3", "--seed", "11",
                       "--index-out", (dir / "e1.bin").string()});
  auto e8 = forge_run({"--threads", "8", "epoch-plan", "--records", "5000", "--epochs", "3", "--seed", "11",
                       "--index-out", (dir / "e8.bin").string()});
  ASSERT_EQ(e1.code, 0) << e1.err;
  EXPECT_EQ(body(e1.out), body(e8.out));
  EXPECT_EQ(text::read_file(dir / "e1.bin"), text::read_file(dir / "e8.bin"));
  EXPECT_NE(e1.report().get("epoch.0.sha256"), e1.report().get("epoch.1.sha256"));
  EXPECT_EQ(forge_run({"epoch-plan", "--seed", "1"}).code, cli::kExitValidation);
}

TEST(Cli, ChunkAndJitter) {
  forge::testing::TempDir dir;
  forge::testing::Rng rng(2);
  const auto traj = forge::testing::smooth_trajectory(rng, 50, 7);
  action::save_trajectory(dir / "t.bin", traj);
  auto c = forge_run({"chunk", "--trajectory", (dir / "t.bin").string(), "--k", "8", "--normalize", "--stats-out",
                      (dir / "n.txt").string(), "--chunks-out", (dir / "c.bin").string()});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.report().get("chunks"), "7");
  EXPECT_EQ(c.report().get("padded_steps"), "6");
  EXPECT_TRUE(std::filesystem::exists(dir / "n.txt"));
  auto bad = forge_run({"chunk", "--trajectory", (dir / "t.bin").string(), "--k", "4", "--stride", "5"});
  EXPECT_EQ(bad.code, cli::kExitValidation);
  auto j = forge_run({"jitter", "--trajectory", (dir / "t.bin").string()});
  ASSERT_EQ(j.code, 0) << j.err;
  EXPECT_EQ(j.report().get("trajectories"), "1");
}
