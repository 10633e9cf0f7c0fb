#include "forge/mixture/spec.hpp"

#include <cmath>
#include <unordered_set>

#include "forge/error.hpp"
#include "forge/text.hpp"

namespace forge::mixture {

MixtureSpec::MixtureSpec(std::vector<MixtureEntry> entries, std::optional<std::uint64_t> declared_total)
    : entries_(std::move(entries)), declared_total_(declared_total) {
  if (entries_.empty()) throw ValidationError("mixture spec has no entries");
  std::unordered_set<std::string> names;
  for (const auto& e : entries_) {
    if (e.name.empty()) throw ValidationError("mixture entry with empty name");
    if (!std::isfinite(e.weight) || e.weight <= 0.0) {
      throw ValidationError("mixture weight for '" + e.name + "' must be positive");
    }
    if (!names.insert(e.name).second) throw ValidationError("duplicate mixture entry '" + e.name + "'");
    raw_sum_ += e.weight;
  }
  normalized_.reserve(entries_.size());
  for (const auto& e : entries_) normalized_.push_back(e.weight / raw_sum_);
}

std::optional<std::size_t> MixtureSpec::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name == name) return i;
  }
  return std::nullopt;
}

MixtureSpec parse_mixture_spec(std::string_view content, const std::string& source) {
  const auto lines = text::split_lines(content);
  if (lines.empty() || lines[0].rfind(kMixtureHeader, 0) != 0) {
    throw ParseError(source, 1, "expected header " + std::string(kMixtureHeader));
  }
  std::optional<std::uint64_t> total;
  const std::string_view rest = text::trim(std::string_view(lines[0]).substr(kMixtureHeader.size()));
  if (!rest.empty()) {
    if (rest.rfind("total=", 0) != 0) throw ParseError(source, 1, "unexpected header field");
    total = text::parse_u64(rest.substr(6));
    if (!total) throw ParseError(source, 1, "malformed total");
  }
  std::vector<MixtureEntry> entries;
  std::unordered_set<std::string> names;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (text::trim(lines[i]).empty()) continue;
    const auto f = text::split(lines[i], '\t');
    if (f.size() != 2) throw ParseError(source, line_no, "expected <name>\\t<weight-percent>");
    auto w = text::parse_double(text::trim(f[1]));
    if (!w) throw ParseError(source, line_no, "malformed weight");
    if (!(*w > 0.0) || !std::isfinite(*w)) throw ParseError(source, line_no, "weight must be positive");
    std::string name(f[0]);
    if (name.empty()) throw ParseError(source, line_no, "empty dataset name");
    if (!names.insert(name).second) throw ParseError(source, line_no, "duplicate dataset name '" + name + "'");
    entries.push_back(MixtureEntry{std::move(name), *w});
  }
  if (entries.empty()) throw ParseError(source, lines.size(), "mixture spec has no entries");
  return MixtureSpec(std::move(entries), total);
}

std::string serialize_mixture_spec(const MixtureSpec& spec) {
  std::string out(kMixtureHeader);
  if (spec.declared_total()) out += " total=" + std::to_string(*spec.declared_total());
  out += '\n';
  for (const auto& e : spec.entries()) {
    out += e.name;
    out += '\t';
    out += text::format_double(e.weight);
    out += '\n';
  }
  return out;
}

MixtureSpec load_mixture_spec(const std::filesystem::path& path) {
  return parse_mixture_spec(text::read_file(path), path.string());
}

}  // namespace forge::mixture
