#include "forge/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <unordered_set>
#include <ostream>
#include <string>
#include <vector>

#include "forge/action/chunk.hpp"
#include "forge/action/jitter.hpp"
#include "forge/action/latency.hpp"
#include "forge/action/norm.hpp"
#include "forge/action/trajectory.hpp"
#include "forge/bpe/io.hpp"
#include "forge/bpe/trainer.hpp"
#include "forge/error.hpp"
#include "forge/extend/efficiency.hpp"
#include "forge/extend/filters.hpp"
#include "forge/extend/merge.hpp"
#include "forge/extend/plan.hpp"
#include "forge/mixture/digest.hpp"
#include "forge/mixture/epoch.hpp"
#include "forge/mixture/manifest.hpp"
#include "forge/mixture/sampler.hpp"
#include "forge/mixture/spec.hpp"
#include "forge/mixture/stages.hpp"
#include "forge/parallel.hpp"
#include "forge/report.hpp"
#include "forge/text.hpp"

namespace forge::cli {
namespace {

struct Common {
  std::string out;
  std::string format = "structured";
  std::size_t threads = 0;
};

struct TrainArgs {
  std::string corpus;
  std::size_t vocab_size = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t min_pair_frequency = 2;
  bool no_normalize = false;
  std::string specials = "<pad>,<s>,</s>,<unk>";
  std::string vocab_out;
};

struct MergeArgs {
  std::string base;
  std::vector<std::string> extend;
  std::vector<std::string> extend_list;
  std::optional<std::size_t> target_size;
  double tolerance = 0.05;
  std::uint64_t min_frequency = 0;
  std::string freq_corpus;
  std::vector<std::string> scripts;
  std::string allow_list;
  std::string deny_list;
  std::string vocab_out;
};

struct PlanArgs {
  std::string base;
  std::string merged;
  std::string plan_out;
};

struct EfficiencyArgs {
  std::string vocab;
  std::string extended;
  std::string corpus;
};

struct ValidateArgs {
  std::string spec;
  std::string stages;
  std::vector<std::string> manifests;
  bool verify = false;
};

struct SampleArgs {
  std::string spec;
  std::uint64_t draws = 0;
  std::uint64_t seed = 0;
  std::uint64_t start = 0;
  double sigmas = 3.0;
  std::string sequence_out;
};

struct EpochArgs {
  std::optional<std::uint64_t> records;
  std::string manifest;
  std::uint64_t epochs = mixture::kDefaultEpochs;
  std::uint64_t seed = 0;
  std::string index_out;
};

struct ChunkArgs {
  std::string trajectory;
  std::size_t k = 0;
  std::optional<std::size_t> stride;
  std::string pad = "repeat-last";
  std::string stats;
  bool normalize = false;
  std::string stats_out;
  std::string chunks_out;
};

struct JitterArgs {
  std::vector<std::string> trajectories;
};

struct LatencyArgs {
  std::size_t k = 0;
  std::size_t dims = 0;
  double cost = 0.0;
  double overhead = 1.0;
};

std::vector<std::string> load_corpus(const std::string& path) { return text::read_lines(path); }

std::unordered_set<std::string> load_token_set(const std::string& path) {
  std::unordered_set<std::string> set;
  if (path.empty()) return set;
  for (auto& line : text::read_lines(path)) {
    if (text::trim(line).empty()) continue;
    std::string token;
    for (char c : line) {
      if (c == ' ') token += bpe::kWordBoundary;
      else token += c;
    }
    set.insert(std::move(token));
  }
  return set;
}

// Resolved configuration: every option of the app and the chosen
// subcommand, given or defaulted, in declaration order.
void record_config(Report& r, const CLI::App& app, const CLI::App& sub) {
  auto add_options = [&r](const CLI::App& a) {
    for (const CLI::Option* opt : a.get_options()) {
      const std::string name = opt->get_single_name();
      if (name == "help" || name == "version" || name.empty()) continue;
      std::string value;
      if (opt->get_expected_min() == 0) {
        value = opt->count() > 0 ? "true" : "false";
      } else if (opt->count() > 0) {
        const auto& results = opt->results();
        for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
      } else {
        value = opt->get_default_str();
      }
      r.add("config." + name, value);
    }
  };
  add_options(app);
  add_options(sub);
}

Report cmd_train(const TrainArgs& a, const Common& c) {
  bpe::TrainerOptions opts;
  opts.target_vocab_size = a.vocab_size;
  opts.min_pair_frequency = a.min_pair_frequency;
  opts.normalize = !a.no_normalize;
  opts.threads = c.threads;
  opts.specials.clear();
  for (auto s : text::split(a.specials, ',')) {
    if (!s.empty()) opts.specials.emplace_back(s);
  }
  const auto corpus = load_corpus(a.corpus);
  auto result = bpe::train_bpe(corpus, opts);
  bpe::save_tokenizer(result.tokenizer, a.vocab_out);
  const auto& s = result.stats;
  Report r;
  r.add("documents", static_cast<std::uint64_t>(s.documents))
      .add("characters", s.characters)
      .add("unique_words", static_cast<std::uint64_t>(s.unique_words))
      .add("alphabet_size", static_cast<std::uint64_t>(s.alphabet_size))
      .add("merges", static_cast<std::uint64_t>(s.merges))
      .add("vocab_size", static_cast<std::uint64_t>(s.vocab_size))
      .add("stop_reason", std::string(bpe::to_string(s.stop)))
      .add("vocab_file", a.vocab_out)
      .add("merges_file", bpe::merges_path_for(a.vocab_out).string());
  return r;
}

Report cmd_merge(const MergeArgs& a, const Common&) {
  const auto base = bpe::load_tokenizer(a.base);
  std::vector<extend::ExtensionSource> sources;
  for (const auto& p : a.extend) sources.push_back(extend::source_from_tokenizer(p, bpe::load_tokenizer(p)));
  for (const auto& p : a.extend_list) sources.push_back(extend::load_token_list(p));
  if (sources.empty()) throw ValidationError("merge-vocab needs at least one --extend or --extend-list");
  if (!a.freq_corpus.empty()) {
    const auto corpus = load_corpus(a.freq_corpus);
    for (auto& s : sources) {
      if (s.frequencies.empty()) s.frequencies = extend::count_occurrences(s.vocab, corpus);
    }
  }
  extend::FilterRules rules;
  rules.min_frequency = a.min_frequency;
  rules.allowed_scripts = a.scripts;
  rules.allow_list = load_token_set(a.allow_list);
  rules.deny_list = load_token_set(a.deny_list);
  extend::MergeOptions opts{a.target_size, a.tolerance};
  auto outcome = extend::merge_vocabularies(base, sources, rules, opts);
  bpe::save_tokenizer(outcome.merged, a.vocab_out);
  Report r = outcome.report.to_report();
  r.add("vocab_file", a.vocab_out).add("merges_file", bpe::merges_path_for(a.vocab_out).string());
  return r;
}

Report cmd_plan(const PlanArgs& a, const Common&) {
  const auto base = bpe::load_tokenizer(a.base);
  const auto merged = bpe::load_tokenizer(a.merged);
  const auto plan = extend::plan_embedding_extension(base, merged.vocab());
  text::write_file(a.plan_out, extend::serialize_plan(plan));
  std::uint64_t subtoken = 0;
  for (const auto& e : plan.entries) subtoken += e.strategy == extend::InitStrategy::subtoken_mean;
  Report r;
  r.add("base_size", static_cast<std::uint64_t>(plan.base_size))
      .add("new_tokens", static_cast<std::uint64_t>(plan.entries.size()))
      .add("subtoken_mean", subtoken)
      .add("global_mean", static_cast<std::uint64_t>(plan.entries.size()) - subtoken)
      .add("plan_file", a.plan_out);
  return r;
}

Report cmd_efficiency(const EfficiencyArgs& a, const Common& c) {
  const auto corpus = load_corpus(a.corpus);
  const auto base = bpe::load_tokenizer(a.vocab);
  if (a.extended.empty()) return extend::encoding_efficiency(base, corpus, c.threads).to_report();
  const auto ext = bpe::load_tokenizer(a.extended);
  return extend::compare_efficiency(base, ext, corpus, c.threads).to_report();
}

Report cmd_validate(const ValidateArgs& a, const Common& c, bool& failed) {
  if (a.spec.empty() && a.stages.empty() && a.manifests.empty()) {
    throw ValidationError("mixture-validate needs --spec, --stages or --manifest");
  }
  Report r;
  if (!a.spec.empty()) {
    const auto spec = mixture::load_mixture_spec(a.spec);
    r.add("spec.entries", static_cast<std::uint64_t>(spec.size())).add("spec.raw_sum", spec.raw_sum());
    if (spec.declared_total()) r.add("spec.declared_total", *spec.declared_total());
    double total = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const std::string p = "spec.entry." + std::to_string(i) + ".";
      r.add(p + "name", spec.name(i)).add(p + "weight", spec.entries()[i].weight).add(p + "normalized", spec.normalized()[i]);
      total += spec.normalized()[i];
    }
    r.add("spec.normalized_sum", total);
  }
  std::vector<mixture::DatasetManifest> manifests;
  for (const auto& p : a.manifests) {
    manifests.push_back(mixture::load_manifest(p));
    manifests.back().validate();
  }
  if (a.verify) {
    for (std::size_t i = 0; i < manifests.size(); ++i) {
      const auto v = mixture::verify_manifest(manifests[i], c.threads);
      r.merge(v.to_report(), "manifest." + std::to_string(i) + ".");
      failed = failed || !v.ok();
    }
  }
  if (!a.stages.empty()) {
    const auto stages = mixture::load_stages(a.stages);
    r.merge(mixture::assemble_staged_mixture(stages, manifests).to_report(), "staged.");
  }
  return r;
}

Report cmd_sample(const SampleArgs& a, const Common& c) {
  if (a.draws == 0) throw ValidationError("--draws must be positive");
  const mixture::MixtureSampler sampler(mixture::load_mixture_spec(a.spec));
  const auto& spec = sampler.spec();
  const mixture::SamplerState start{a.seed, a.start};
  const auto counts = sampler.histogram(start, a.draws, c.threads);
  if (!a.sequence_out.empty()) {
    std::vector<std::uint64_t> seq(a.draws);
    for (std::uint64_t i = 0; i < a.draws; ++i) seq[i] = sampler.draw_at(a.seed, a.start + i);
    mixture::write_index_stream(a.sequence_out, seq);
  }
  Report r;
  r.add("datasets", static_cast<std::uint64_t>(spec.size()))
      .add("raw_sum", spec.raw_sum())
      .add("draws", a.draws)
      .add("state.start", start.serialize())
      .add("state.end", mixture::SamplerState{a.seed, a.start + a.draws}.serialize());
  const double n = static_cast<double>(a.draws);
  double max_z = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double p = spec.normalized()[i];
    const double freq = static_cast<double>(counts[i]) / n;
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    const double z = sigma > 0.0 ? (freq - p) / sigma : 0.0;
    max_z = std::max(max_z, std::abs(z));
    const std::string q = "dataset." + std::to_string(i) + ".";
    r.add(q + "name", spec.name(i))
        .add(q + "expected", p)
        .add(q + "count", counts[i])
        .add(q + "frequency", freq)
        .add(q + "sigma", sigma)
        .add(q + "z", z);
  }
  r.add("max_abs_z", max_z).add("tolerance_sigmas", a.sigmas).add("within_tolerance", max_z <= a.sigmas);
  if (!a.sequence_out.empty()) r.add("sequence_file", a.sequence_out);
  return r;
}

Report cmd_epoch(const EpochArgs& a, const Common&) {
  std::uint64_t records = 0;
  if (!a.manifest.empty()) {
    if (a.records) throw ValidationError("give either --records or --manifest, not both");
    const auto m = mixture::load_manifest(a.manifest);
    m.validate();
    records = m.record_count;
  } else if (a.records) {
    records = *a.records;
  } else {
    throw ValidationError("epoch-plan needs --records or --manifest");
  }
  mixture::EpochPlan check(records, a.epochs, a.seed);
  const auto plan = mixture::epoch_plan(records, a.epochs, a.seed);
  if (!a.index_out.empty()) mixture::write_index_stream(a.index_out, plan);
  Report r;
  r.add("records", records).add("epochs", a.epochs).add("total", check.total());
  for (std::uint64_t e = 0; e < a.epochs; ++e) {
    const std::string enc = mixture::encode_index_stream(std::span(plan).subspan(e * records, records));
    r.add("epoch." + std::to_string(e) + ".sha256", mixture::to_hex(mixture::sha256(enc)));
  }
  if (!a.index_out.empty()) r.add("index_file", a.index_out);
  return r;
}

Report cmd_chunk(const ChunkArgs& a, const Common&) {
  auto pad = action::parse_pad_policy(a.pad);
  if (!pad) throw ValidationError("--pad must be repeat-last or zero");
  auto traj = action::load_trajectory(a.trajectory);
  Report r;
  r.add("steps", static_cast<std::uint64_t>(traj.steps())).add("dims", static_cast<std::uint64_t>(traj.dims()));
  if (a.normalize || !a.stats_out.empty()) {
    action::NormStats stats;
    if (!a.stats.empty()) {
      stats = action::load_norm_stats(a.stats);
    } else {
      const std::vector<action::Trajectory> one{traj};
      stats = action::fit_norm_stats(one);
    }
    if (!a.stats_out.empty()) {
      action::save_norm_stats(a.stats_out, stats);
      r.add("stats_file", a.stats_out);
    }
    std::uint64_t degenerate = 0;
    for (std::size_t d = 0; d < stats.dims(); ++d) degenerate += stats.degenerate(d);
    r.add("degenerate_dims", degenerate);
    if (a.normalize) traj = action::normalize(traj, stats);
  }
  const std::size_t stride = a.stride.value_or(a.k);
  const auto chunks = action::chunk_trajectory(traj, a.k, stride, *pad);
  const std::size_t covered = (chunks.size() - 1) * stride + a.k;
  r.add("k", static_cast<std::uint64_t>(a.k))
      .add("stride", static_cast<std::uint64_t>(stride))
      .add("chunks", static_cast<std::uint64_t>(chunks.size()))
      .add("padded_steps", static_cast<std::uint64_t>(covered - traj.steps()));
  if (!a.chunks_out.empty()) {
    action::save_chunks(a.chunks_out, chunks, traj.dt());
    r.add("chunks_file", a.chunks_out);
  }
  return r;
}

Report cmd_jitter(const JitterArgs& a, const Common&) {
  Report r;
  r.add("trajectories", static_cast<std::uint64_t>(a.trajectories.size()));
  for (std::size_t i = 0; i < a.trajectories.size(); ++i) {
    const auto traj = action::load_trajectory(a.trajectories[i]);
    const std::string p = "trajectory." + std::to_string(i) + ".";
    r.add(p + "path", a.trajectories[i])
        .add(p + "steps", static_cast<std::uint64_t>(traj.steps()))
        .add(p + "jitter", action::jitter(traj));
  }
  return r;
}

Report cmd_latency(const LatencyArgs& a, const Common&) {
  action::LatencyModel model{a.cost, a.overhead, action::DecodeMode::autoregressive};
  const auto ar = action::decode_latency_breakdown(model, a.k, a.dims);
  model.mode = action::DecodeMode::parallel;
  const auto par = action::decode_latency_breakdown(model, a.k, a.dims);
  Report r;
  r.add("autoregressive.per_chunk_s", ar.per_chunk)
      .add("autoregressive.per_step_s", ar.per_step)
      .add("parallel.per_chunk_s", par.per_chunk)
      .add("parallel.per_step_s", par.per_step)
      .add("speedup", ar.per_chunk / par.per_chunk)
      .add("parallel_faster", par.per_chunk < ar.per_chunk);
  return r;
}

void emit(const Report& report, const Common& c, std::ostream& out) {
  const auto fmt = c.format == "human" ? ReportFormat::human : ReportFormat::structured;
  const std::string rendered = report.render(fmt);
  if (c.out.empty()) {
    out << rendered;
  } else {
    text::write_file(c.out, rendered);
  }
}

}  // namespace

std::string version() { return FORGE_VERSION; }

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"forge: tokenizer, data-mixture and action-chunk pipeline tools", "forge"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1, 1);
  app.failure_message(CLI::FailureMessage::help);
  app.set_version_flag("--version", version());

  Common common;
  app.add_option("--out", common.out, "Write the report here instead of stdout");
  app.add_option("--format", common.format, "Report format")->check(CLI::IsMember({"structured", "human"}));
  app.add_option("--threads", common.threads, "Worker threads (0 = FORGE_THREADS or hardware)");

  TrainArgs train;
  auto* s_train = app.add_subcommand("train-bpe", "Train a BPE tokenizer on a line-per-document corpus");
  s_train->add_option("--corpus", train.corpus, "Corpus, one document per line")->required();
  s_train->add_option("--vocab-size", train.vocab_size, "Target vocabulary size")->required();
  s_train->add_option("--seed", train.seed, "Recorded for the run; training is deterministic");
  s_train->add_option("--min-pair-frequency", train.min_pair_frequency, "Stop when the best pair is rarer");
  s_train->add_flag("--no-normalize", train.no_normalize, "Skip NFKC on the corpus");
  s_train->add_option("--specials", train.specials, "Comma-separated special tokens");
  s_train->add_option("--vocab-out", train.vocab_out, "Vocabulary path (merges go to <path>.merges)")->required();

  MergeArgs merge;
  auto* s_merge = app.add_subcommand("merge-vocab", "Extend a base tokenizer with extra vocabularies");
  s_merge->add_option("--base", merge.base, "Base tokenizer vocabulary")->required();
  s_merge->add_option("--extend", merge.extend, "Extension tokenizer (repeatable)");
  s_merge->add_option("--extend-list", merge.extend_list, "Extension token list, one per line (repeatable)");
  s_merge->add_option("--target-size", merge.target_size, "Expected final size");
  s_merge->add_option("--tolerance", merge.tolerance, "Relative tolerance on the target size");
  s_merge->add_option("--min-frequency", merge.min_frequency, "Drop extension tokens rarer than this");
  s_merge->add_option("--freq-corpus", merge.freq_corpus, "Corpus for token frequencies");
  s_merge->add_option("--script", merge.scripts, "Allowed Unicode script (repeatable)");
  s_merge->add_option("--allow-list", merge.allow_list, "Tokens that bypass filters, one per line");
  s_merge->add_option("--deny-list", merge.deny_list, "Tokens always rejected, one per line");
  s_merge->add_option("--vocab-out", merge.vocab_out, "Merged vocabulary path")->required();

  PlanArgs plan;
  auto* s_plan = app.add_subcommand("plan-embed", "Plan embedding rows for tokens added by a merge");
  s_plan->add_option("--base", plan.base, "Base tokenizer vocabulary")->required();
  s_plan->add_option("--merged", plan.merged, "Merged tokenizer vocabulary")->required();
  s_plan->add_option("--plan-out", plan.plan_out, "Plan file")->required();

  EfficiencyArgs eff;
  auto* s_eff = app.add_subcommand("eval-efficiency", "Tokens per character on a corpus");
  s_eff->add_option("--vocab", eff.vocab, "Tokenizer vocabulary")->required();
  s_eff->add_option("--extended", eff.extended, "Second tokenizer to compare against --vocab");
  s_eff->add_option("--corpus", eff.corpus, "Corpus, one document per line")->required();

  ValidateArgs val;
  auto* s_val = app.add_subcommand("mixture-validate", "Check mixture specs, stage counts and manifests");
  s_val->add_option("--spec", val.spec, "Mixture spec file");
  s_val->add_option("--stages", val.stages, "Stage declaration file");
  s_val->add_option("--manifest", val.manifests, "Dataset manifest (repeatable)");
  s_val->add_flag("--verify", val.verify, "Recompute shard digests and record counts");

  SampleArgs sample;
  auto* s_sample = app.add_subcommand("mixture-sample", "Draw dataset indices from a mixture");
  s_sample->add_option("--spec", sample.spec, "Mixture spec file")->required();
  s_sample->add_option("--draws", sample.draws, "Number of draws")->required();
  s_sample->add_option("--seed", sample.seed, "Sampler seed")->required();
  s_sample->add_option("--start", sample.start, "Draw count to resume from");
  s_sample->add_option("--sigmas", sample.sigmas, "Binomial tolerance in standard deviations");
  s_sample->add_option("--sequence-out", sample.sequence_out, "Dataset indices as little-endian u64");

  EpochArgs epoch;
  auto* s_epoch = app.add_subcommand("epoch-plan", "Shuffled record order for each epoch");
  s_epoch->add_option("--records", epoch.records, "Record count");
  s_epoch->add_option("--manifest", epoch.manifest, "Take the record count from a manifest");
  s_epoch->add_option("--epochs", epoch.epochs, "Number of epochs");
  s_epoch->add_option("--seed", epoch.seed, "Shuffle seed")->required();
  s_epoch->add_option("--index-out", epoch.index_out, "Record indices as little-endian u64");

  ChunkArgs chunk;
  auto* s_chunk = app.add_subcommand("chunk", "Split a trajectory into action chunks");
  s_chunk->add_option("--trajectory", chunk.trajectory, "Binary trajectory file")->required();
  s_chunk->add_option("--k", chunk.k, "Chunk length K")->required();
  s_chunk->add_option("--stride", chunk.stride, "Steps between chunk starts (default K)");
  s_chunk->add_option("--pad", chunk.pad, "Tail padding")->check(CLI::IsMember({"repeat-last", "zero"}));
  s_chunk->add_option("--stats", chunk.stats, "Normalization stats to use instead of fitting");
  s_chunk->add_flag("--normalize", chunk.normalize, "Normalize actions before chunking");
  s_chunk->add_option("--stats-out", chunk.stats_out, "Write the normalization stats here");
  s_chunk->add_option("--chunks-out", chunk.chunks_out, "Binary chunk file");

  JitterArgs jit;
  auto* s_jit = app.add_subcommand("jitter", "Mean second-difference norm of trajectories");
  s_jit->add_option("--trajectory", jit.trajectories, "Binary trajectory file (repeatable)")->required();

  LatencyArgs lat;
  auto* s_lat = app.add_subcommand("latency", "Decode latency of one chunk, autoregressive vs parallel");
  s_lat->add_option("--k", lat.k, "Chunk length K")->required();
  s_lat->add_option("--dims", lat.dims, "Action dimensions D")->required();
  s_lat->add_option("--cost", lat.cost, "Seconds per decoded token")->required();
  s_lat->add_option("--overhead", lat.overhead, "Parallel pass cost in token-equivalents");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  const CLI::App* sub = app.get_subcommands().front();
  try {
    Report report;
    report.add("tool", "forge").add("version", version()).add("subcommand", sub->get_name());
    record_config(report, app, *sub);
    bool failed = false;
    Report body;
    if (sub == s_train) body = cmd_train(train, common);
    else if (sub == s_merge) body = cmd_merge(merge, common);
    else if (sub == s_plan) body = cmd_plan(plan, common);
    else if (sub == s_eff) body = cmd_efficiency(eff, common);
    else if (sub == s_val) body = cmd_validate(val, common, failed);
    else if (sub == s_sample) body = cmd_sample(sample, common);
    else if (sub == s_epoch) body = cmd_epoch(epoch, common);
    else if (sub == s_chunk) body = cmd_chunk(chunk, common);
    else if (sub == s_jit) body = cmd_jitter(jit, common);
    else body = cmd_latency(lat, common);
    report.merge(body);
    report.add("status", failed ? "failed" : "ok");
    emit(report, common, out);
    return failed ? kExitValidation : kExitOk;
  } catch (const IoError& e) {
    err << "forge: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "forge: error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "forge: error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace forge::cli
