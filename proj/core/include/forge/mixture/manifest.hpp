#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forge/mixture/digest.hpp"
#include "forge/report.hpp"

namespace forge::mixture {

struct ShardEntry {
  std::string path;  // relative to the manifest's directory unless absolute
  std::uint64_t record_count = 0;
  Digest digest{};

  bool operator==(const ShardEntry&) const = default;
};

// Shards hold newline-delimited records for formats "lines" and "jsonl".
struct DatasetManifest {
  std::string name;
  std::uint64_t record_count = 0;
  std::string format = "lines";
  std::vector<ShardEntry> shards;
  std::filesystem::path base_dir;  // shard paths resolve against this

  // Throws ValidationError when shard counts do not sum to record_count or
  // the format is unknown.
  void validate() const;
  std::filesystem::path resolve(const ShardEntry& shard) const;

  bool operator==(const DatasetManifest& o) const {
    return name == o.name && record_count == o.record_count && format == o.format && shards == o.shards;
  }
};

inline constexpr std::string_view kManifestHeader = "#manifest-v1";

// Line 1 `#manifest-v1`; line 2 `<name>\t<record_count>\t<format>`; then
// `<path>\t<count>\t<hex-digest>` per shard.
DatasetManifest parse_manifest(std::string_view content, const std::string& source = "<manifest>");
std::string serialize_manifest(const DatasetManifest& m);
DatasetManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const DatasetManifest& m, const std::filesystem::path& path);

// Records in a newline-delimited shard body; a final unterminated line counts.
std::uint64_t count_records(std::string_view bytes) noexcept;

// Scans shard files and records their counts and digests.
DatasetManifest build_manifest(std::string name, std::string format, const std::filesystem::path& base_dir,
                               std::span<const std::string> shard_paths);

struct ShardCheck {
  std::string path;
  bool readable = true;
  bool digest_ok = true;
  bool count_ok = true;
  std::uint64_t expected_count = 0;
  std::uint64_t actual_count = 0;
  std::string expected_digest;
  std::string actual_digest;
  std::string error;

  bool ok() const noexcept { return readable && digest_ok && count_ok; }
};

struct VerifyReport {
  std::string name;
  std::vector<ShardCheck> shards;

  bool ok() const noexcept;
  std::size_t failures() const noexcept;
  Report to_report() const;
};

// Recomputes every shard's digest and record count; shards run in parallel.
VerifyReport verify_manifest(const DatasetManifest& m, std::size_t threads = 0);

// Shard contents after checking digest and count. Throws ValidationError on
// mismatch, IoError when unreadable.
std::string read_verified_shard(const DatasetManifest& m, std::size_t shard);

}  // namespace forge::mixture
