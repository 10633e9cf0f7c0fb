#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forge/mixture/manifest.hpp"
#include "forge/mixture/spec.hpp"
#include "forge/report.hpp"

namespace forge::mixture {

enum class StageId { captioning, instruct };

std::string_view to_string(StageId id) noexcept;

struct SourceDecl {
  std::string name;
  std::uint64_t declared = 0;
};

struct StageSpec {
  StageId id = StageId::captioning;
  std::vector<SourceDecl> sources;
  std::uint64_t declared_total = 0;
};

// Count disagreements are reported, never corrected.
struct CountWarning {
  enum class Scope { source, stage };
  Scope scope = Scope::source;
  StageId stage = StageId::captioning;
  std::string source;  // empty for stage-level warnings
  std::uint64_t declared = 0;
  std::uint64_t actual = 0;
  std::int64_t delta = 0;  // declared - actual
};

struct PlannedSource {
  std::string name;
  std::uint64_t declared = 0;
  std::uint64_t actual = 0;
  double weight = 0.0;  // actual / stage actual total
};

struct PlannedStage {
  StageId id = StageId::captioning;
  std::uint64_t declared_total = 0;
  std::uint64_t actual_total = 0;
  std::vector<PlannedSource> sources;

  // Count-proportional mixture over sources that have records.
  MixtureSpec mixture() const;
};

struct StagedPlan {
  std::vector<PlannedStage> stages;
  std::vector<CountWarning> warnings;

  Report to_report() const;
};

// Checks each source's manifest count against its declared count and each
// stage's manifest total against its declared total. Throws ValidationError
// for no stages, an empty stage, no manifests, or a source without a manifest.
StagedPlan assemble_staged_mixture(std::span<const StageSpec> stages, std::span<const DatasetManifest> manifests);

// `#stages-v1`, then `stage\t<id>\t<declared_total>` lines each followed by
// that stage's `source\t<name>\t<declared_count>` lines.
std::vector<StageSpec> parse_stages(std::string_view content, const std::string& source = "<stages>");
std::string serialize_stages(std::span<const StageSpec> stages);
std::vector<StageSpec> load_stages(const std::filesystem::path& path);

}  // namespace forge::mixture
