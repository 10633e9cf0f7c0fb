#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace forge::mixture {

struct MixtureEntry {
  std::string name;
  double weight = 0.0;  // raw percentage as declared
};

// Named dataset weights. Raw weights are kept verbatim; the normalized
// distribution divides by their sum, which need not be 100.
class MixtureSpec {
 public:
  MixtureSpec() = default;
  // Throws ValidationError on non-positive or non-finite weights, duplicate
  // or empty names, or an empty entry list.
  explicit MixtureSpec(std::vector<MixtureEntry> entries, std::optional<std::uint64_t> declared_total = {});

  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const MixtureEntry> entries() const noexcept { return entries_; }
  std::span<const double> normalized() const noexcept { return normalized_; }
  double raw_sum() const noexcept { return raw_sum_; }
  std::optional<std::uint64_t> declared_total() const noexcept { return declared_total_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  const std::string& name(std::size_t index) const { return entries_.at(index).name; }

 private:
  std::vector<MixtureEntry> entries_;
  std::vector<double> normalized_;
  double raw_sum_ = 0.0;
  std::optional<std::uint64_t> declared_total_;
};

inline constexpr std::string_view kMixtureHeader = "#mixture-v1";

// `#mixture-v1` (optionally ` total=<n>`), then `<name>\t<weight-percent>`.
MixtureSpec parse_mixture_spec(std::string_view content, const std::string& source = "<mixture>");
std::string serialize_mixture_spec(const MixtureSpec& spec);
MixtureSpec load_mixture_spec(const std::filesystem::path& path);

}  // namespace forge::mixture
