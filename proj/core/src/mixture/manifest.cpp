#include "forge/mixture/manifest.hpp"

#include <algorithm>

#include "forge/error.hpp"
#include "forge/parallel.hpp"
#include "forge/text.hpp"

namespace forge::mixture {

namespace {

bool known_format(std::string_view f) { return f == "lines" || f == "jsonl"; }

}  // namespace

void DatasetManifest::validate() const {
  if (name.empty()) throw ValidationError("manifest has an empty dataset name");
  if (!known_format(format)) throw ValidationError("manifest '" + name + "' has unknown format '" + format + "'");
  std::uint64_t sum = 0;
  for (const auto& s : shards) sum += s.record_count;
  if (sum != record_count) {
    throw ValidationError("manifest '" + name + "': shard counts sum to " + std::to_string(sum) +
                          " but record_count is " + std::to_string(record_count));
  }
}

std::filesystem::path DatasetManifest::resolve(const ShardEntry& shard) const {
  std::filesystem::path p(shard.path);
  return p.is_absolute() ? p : base_dir / p;
}

DatasetManifest parse_manifest(std::string_view content, const std::string& source) {
  const auto lines = text::split_lines(content);
  if (lines.empty() || lines[0] != kManifestHeader) {
    throw ParseError(source, 1, "expected header " + std::string(kManifestHeader));
  }
  if (lines.size() < 2) throw ParseError(source, 2, "missing dataset record");
  DatasetManifest m;
  {
    const auto f = text::split(lines[1], '\t');
    if (f.size() != 3) throw ParseError(source, 2, "expected <name>\\t<record_count>\\t<format>");
    auto count = text::parse_u64(f[1]);
    if (!count) throw ParseError(source, 2, "malformed record count");
    m.name = std::string(f[0]);
    m.record_count = *count;
    m.format = std::string(f[2]);
  }
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto f = text::split(lines[i], '\t');
    if (f.size() != 3) throw ParseError(source, line_no, "expected <path>\\t<count>\\t<hex-digest>");
    auto count = text::parse_u64(f[1]);
    if (!count) throw ParseError(source, line_no, "malformed shard count");
    auto digest = digest_from_hex(f[2]);
    if (!digest) throw ParseError(source, line_no, "malformed 256-bit hex digest");
    if (f[0].empty()) throw ParseError(source, line_no, "empty shard path");
    m.shards.push_back(ShardEntry{std::string(f[0]), *count, *digest});
  }
  try {
    m.validate();
  } catch (const ValidationError& e) {
    throw ParseError(source, lines.size(), e.what());
  }
  return m;
}

std::string serialize_manifest(const DatasetManifest& m) {
  std::string out(kManifestHeader);
  out += '\n';
  out += m.name + '\t' + std::to_string(m.record_count) + '\t' + m.format + '\n';
  for (const auto& s : m.shards) out += s.path + '\t' + std::to_string(s.record_count) + '\t' + to_hex(s.digest) + '\n';
  return out;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  DatasetManifest m = parse_manifest(text::read_file(path), path.string());
  m.base_dir = path.parent_path();
  return m;
}

void save_manifest(const DatasetManifest& m, const std::filesystem::path& path) {
  text::write_file(path, serialize_manifest(m));
}

std::uint64_t count_records(std::string_view bytes) noexcept {
  if (bytes.empty()) return 0;
  auto n = static_cast<std::uint64_t>(std::count(bytes.begin(), bytes.end(), '\n'));
  if (bytes.back() != '\n') ++n;
  return n;
}

DatasetManifest build_manifest(std::string name, std::string format, const std::filesystem::path& base_dir,
                               std::span<const std::string> shard_paths) {
  DatasetManifest m;
  m.name = std::move(name);
  m.format = std::move(format);
  m.base_dir = base_dir;
  for (const auto& p : shard_paths) {
    ShardEntry s{p, 0, {}};
    const std::string bytes = text::read_file(m.resolve(s));
    s.record_count = count_records(bytes);
    s.digest = sha256(bytes);
    m.record_count += s.record_count;
    m.shards.push_back(std::move(s));
  }
  m.validate();
  return m;
}

bool VerifyReport::ok() const noexcept { return failures() == 0; }

std::size_t VerifyReport::failures() const noexcept {
  return static_cast<std::size_t>(std::count_if(shards.begin(), shards.end(), [](const auto& s) { return !s.ok(); }));
}

Report VerifyReport::to_report() const {
  Report r;
  r.add("name", name).add("shards", static_cast<std::uint64_t>(shards.size()));
  r.add("failures", static_cast<std::uint64_t>(failures()));
  for (std::size_t i = 0; i < shards.size(); ++i) {
    const auto& s = shards[i];
    const std::string p = "shard." + std::to_string(i) + ".";
    r.add(p + "path", s.path);
    if (!s.readable) {
      r.add(p + "status", "unreadable").add(p + "error", s.error);
      continue;
    }
    std::string status = "ok";
    if (!s.digest_ok && !s.count_ok) status = "digest_and_count_mismatch";
    else if (!s.digest_ok) status = "digest_mismatch";
    else if (!s.count_ok) status = "count_mismatch";
    r.add(p + "status", status)
        .add(p + "expected_count", s.expected_count)
        .add(p + "actual_count", s.actual_count);
    if (!s.digest_ok) r.add(p + "expected_digest", s.expected_digest).add(p + "actual_digest", s.actual_digest);
  }
  return r;
}

VerifyReport verify_manifest(const DatasetManifest& m, std::size_t threads) {
  VerifyReport rep;
  rep.name = m.name;
  rep.shards.resize(m.shards.size());
  parallel_for(m.shards.size(), resolve_threads(threads), [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      const ShardEntry& s = m.shards[i];
      ShardCheck& c = rep.shards[i];
      c.path = s.path;
      c.expected_count = s.record_count;
      c.expected_digest = to_hex(s.digest);
      std::string bytes;
      try {
        bytes = text::read_file(m.resolve(s));
      } catch (const IoError& e) {
        c.readable = false;
        c.digest_ok = false;
        c.count_ok = false;
        c.error = e.what();
        continue;
      }
      const Digest d = sha256(bytes);
      c.actual_digest = to_hex(d);
      c.digest_ok = d == s.digest;
      c.actual_count = count_records(bytes);
      c.count_ok = c.actual_count == s.record_count;
    }
  });
  return rep;
}

std::string read_verified_shard(const DatasetManifest& m, std::size_t shard) {
  if (shard >= m.shards.size()) throw ValidationError("shard index out of range");
  const ShardEntry& s = m.shards[shard];
  std::string bytes = text::read_file(m.resolve(s));
  if (sha256(bytes) != s.digest) throw ValidationError("digest mismatch for shard " + s.path);
  if (count_records(bytes) != s.record_count) throw ValidationError("record count mismatch for shard " + s.path);
  return bytes;
}

}  // namespace forge::mixture
