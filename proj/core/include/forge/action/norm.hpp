#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forge/action/trajectory.hpp"

namespace forge::action {

inline constexpr double kLowQuantile = 0.01;
inline constexpr double kHighQuantile = 0.99;

struct NormStats {
  std::uint64_t count = 0;  // steps the stats were fitted on
  std::vector<double> q_low;
  std::vector<double> q_high;

  std::size_t dims() const noexcept { return q_low.size(); }
  bool degenerate(std::size_t d) const { return !(q_low.at(d) < q_high.at(d)); }
  bool operator==(const NormStats&) const = default;
};

// Linear interpolation between order statistics of an ascending sample.
double percentile(std::span<const double> sorted, double q);

// Per-dimension 1st/99th percentiles over every step of every trajectory.
// Throws ValidationError on no input or mismatched dimensions.
NormStats fit_norm_stats(std::span<const Trajectory> trajectories);

// Maps q_low to -1 and q_high to +1, then clips. Throws ValidationError on
// a dimension mismatch or a degenerate dimension.
Trajectory normalize(const Trajectory& traj, const NormStats& stats);
Trajectory denormalize(const Trajectory& traj, const NormStats& stats);

// `#normstats-v1 count=<n>`, then `<q_low>\t<q_high>` per dimension.
std::string serialize_norm_stats(const NormStats& stats);
NormStats parse_norm_stats(std::string_view content, const std::string& source = "<normstats>");
void save_norm_stats(const std::filesystem::path& path, const NormStats& stats);
NormStats load_norm_stats(const std::filesystem::path& path);

}  // namespace forge::action
