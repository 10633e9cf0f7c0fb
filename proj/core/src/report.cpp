#include "forge/report.hpp"

#include <algorithm>

#include "forge/text.hpp"

namespace forge {

Report& Report::add(std::string key, std::string value) {
  entries_.emplace_back(std::move(key), std::move(value));
  return *this;
}

Report& Report::add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }

Report& Report::add(std::string key, double value) { return add(std::move(key), text::format_double(value)); }

Report& Report::add(std::string key, bool value) {
  return add(std::move(key), std::string(value ? "true" : "false"));
}

Report& Report::add(std::string key, std::int64_t value) { return add(std::move(key), std::to_string(value)); }

Report& Report::add(std::string key, std::uint64_t value) { return add(std::move(key), std::to_string(value)); }

Report& Report::merge(const Report& other, std::string_view prefix) {
  for (const auto& [k, v] : other.entries_) entries_.emplace_back(std::string(prefix) + k, v);
  return *this;
}

std::string Report::get(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return {};
}

std::string Report::render(ReportFormat format) const {
  std::string out;
  if (format == ReportFormat::structured) {
    for (const auto& [k, v] : entries_) {
      out += k;
      out += '=';
      out += v;
      out += '\n';
    }
    return out;
  }
  std::size_t width = 0;
  for (const auto& e : entries_) width = std::max(width, e.first.size());
  for (const auto& [k, v] : entries_) {
    out += k;
    out.append(width - k.size() + 2, ' ');
    out += v;
    out += '\n';
  }
  return out;
}

Report Report::parse(std::string_view structured) {
  Report r;
  for (const auto& line : text::split_lines(structured)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    r.add(line.substr(0, eq), line.substr(eq + 1));
  }
  return r;
}

}  // namespace forge
