#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace forge {

enum class ReportFormat { human, structured };

// Ordered key-value report. Structured rendering is one `key=value` per line
// in insertion order, which keeps reports diffable.
class Report {
 public:
  Report& add(std::string key, std::string value);
  Report& add(std::string key, const char* value);
  Report& add(std::string key, double value);
  Report& add(std::string key, bool value);
  Report& add(std::string key, std::int64_t value);
  Report& add(std::string key, std::uint64_t value);
  Report& add(std::string key, int value) { return add(std::move(key), static_cast<std::int64_t>(value)); }
  Report& add(std::string key, unsigned value) { return add(std::move(key), static_cast<std::uint64_t>(value)); }
  Report& add(std::string key, unsigned long long value) {
    return add(std::move(key), static_cast<std::uint64_t>(value));
  }
  Report& add(std::string key, long long value) { return add(std::move(key), static_cast<std::int64_t>(value)); }

  // Appends all of `other` with `prefix` prepended to each key.
  Report& merge(const Report& other, std::string_view prefix = {});

  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }
  // Value of the first entry named `key`, or empty.
  std::string get(std::string_view key) const;

  std::string render(ReportFormat format = ReportFormat::structured) const;

  // Parses the structured form back into a report.
  static Report parse(std::string_view structured);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace forge
