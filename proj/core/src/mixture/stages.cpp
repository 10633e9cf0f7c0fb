#include "forge/mixture/stages.hpp"

#include <unordered_map>

#include "forge/error.hpp"
#include "forge/text.hpp"

namespace forge::mixture {

std::string_view to_string(StageId id) noexcept { return id == StageId::captioning ? "captioning" : "instruct"; }

MixtureSpec PlannedStage::mixture() const {
  std::vector<MixtureEntry> entries;
  for (const auto& s : sources) {
    if (s.actual > 0) entries.push_back(MixtureEntry{s.name, static_cast<double>(s.actual)});
  }
  return MixtureSpec(std::move(entries), actual_total);
}

StagedPlan assemble_staged_mixture(std::span<const StageSpec> stages, std::span<const DatasetManifest> manifests) {
  if (stages.empty()) throw ValidationError("no stages to assemble");
  if (manifests.empty()) throw ValidationError("manifest list is empty");
  std::unordered_map<std::string, const DatasetManifest*> by_name;
  for (const auto& m : manifests) {
    if (!by_name.emplace(m.name, &m).second) throw ValidationError("duplicate manifest for '" + m.name + "'");
  }
  StagedPlan plan;
  for (const auto& stage : stages) {
    if (stage.sources.empty()) {
      throw ValidationError("stage " + std::string(to_string(stage.id)) + " has no sources");
    }
    PlannedStage ps;
    ps.id = stage.id;
    ps.declared_total = stage.declared_total;
    for (const auto& src : stage.sources) {
      auto it = by_name.find(src.name);
      if (it == by_name.end()) {
        throw ValidationError("no manifest for source '" + src.name + "' in stage " + std::string(to_string(stage.id)));
      }
      const std::uint64_t actual = it->second->record_count;
      ps.sources.push_back(PlannedSource{src.name, src.declared, actual, 0.0});
      ps.actual_total += actual;
      if (actual != src.declared) {
        plan.warnings.push_back(CountWarning{CountWarning::Scope::source, stage.id, src.name, src.declared, actual,
                                             static_cast<std::int64_t>(src.declared) - static_cast<std::int64_t>(actual)});
      }
    }
    for (auto& s : ps.sources) {
      s.weight = ps.actual_total == 0 ? 0.0 : static_cast<double>(s.actual) / static_cast<double>(ps.actual_total);
    }
    if (ps.actual_total != ps.declared_total) {
      plan.warnings.push_back(CountWarning{CountWarning::Scope::stage, stage.id, {}, ps.declared_total, ps.actual_total,
                                           static_cast<std::int64_t>(ps.declared_total) -
                                               static_cast<std::int64_t>(ps.actual_total)});
    }
    plan.stages.push_back(std::move(ps));
  }
  return plan;
}

Report StagedPlan::to_report() const {
  Report r;
  r.add("stages", static_cast<std::uint64_t>(stages.size()));
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const auto& s = stages[i];
    const std::string p = "stage." + std::to_string(i) + ".";
    r.add(p + "id", std::string(to_string(s.id)))
        .add(p + "declared_total", s.declared_total)
        .add(p + "actual_total", s.actual_total)
        .add(p + "sources", static_cast<std::uint64_t>(s.sources.size()));
    for (std::size_t k = 0; k < s.sources.size(); ++k) {
      const auto& src = s.sources[k];
      const std::string q = p + "source." + std::to_string(k) + ".";
      r.add(q + "name", src.name).add(q + "declared", src.declared).add(q + "actual", src.actual).add(q + "weight", src.weight);
    }
  }
  r.add("warnings", static_cast<std::uint64_t>(warnings.size()));
  for (std::size_t i = 0; i < warnings.size(); ++i) {
    const auto& w = warnings[i];
    const std::string p = "warning." + std::to_string(i) + ".";
    r.add(p + "scope", w.scope == CountWarning::Scope::stage ? "stage" : "source")
        .add(p + "stage", std::string(to_string(w.stage)));
    if (!w.source.empty()) r.add(p + "source", w.source);
    r.add(p + "declared", w.declared).add(p + "actual", w.actual).add(p + "delta", w.delta);
  }
  return r;
}

std::vector<StageSpec> parse_stages(std::string_view content, const std::string& source) {
  const auto lines = text::split_lines(content);
  if (lines.empty() || lines[0] != "#stages-v1") throw ParseError(source, 1, "expected header #stages-v1");
  std::vector<StageSpec> stages;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (text::trim(lines[i]).empty()) continue;
    const auto f = text::split(lines[i], '\t');
    if (f.size() != 3) throw ParseError(source, line_no, "expected three tab-separated fields");
    auto count = text::parse_u64(f[2]);
    if (!count) throw ParseError(source, line_no, "malformed count");
    if (f[0] == "stage") {
      StageSpec s;
      if (f[1] == "captioning") s.id = StageId::captioning;
      else if (f[1] == "instruct") s.id = StageId::instruct;
      else throw ParseError(source, line_no, "unknown stage id '" + std::string(f[1]) + "'");
      s.declared_total = *count;
      stages.push_back(std::move(s));
    } else if (f[0] == "source") {
      if (stages.empty()) throw ParseError(source, line_no, "source before any stage");
      if (f[1].empty()) throw ParseError(source, line_no, "empty source name");
      stages.back().sources.push_back(SourceDecl{std::string(f[1]), *count});
    } else {
      throw ParseError(source, line_no, "expected 'stage' or 'source'");
    }
  }
  return stages;
}

std::string serialize_stages(std::span<const StageSpec> stages) {
  std::string out = "#stages-v1\n";
  for (const auto& s : stages) {
    out += "stage\t" + std::string(to_string(s.id)) + '\t' + std::to_string(s.declared_total) + '\n';
    for (const auto& src : s.sources) out += "source\t" + src.name + '\t' + std::to_string(src.declared) + '\n';
  }
  return out;
}

std::vector<StageSpec> load_stages(const std::filesystem::path& path) {
  return parse_stages(text::read_file(path), path.string());
}

}  // namespace forge::mixture
