#include "forge/action/norm.hpp"

#include <algorithm>
#include <cmath>

#include "forge/error.hpp"
#include "forge/text.hpp"

namespace forge::action {
namespace {

void check_usable(const Trajectory& traj, const NormStats& stats) {
  if (traj.dims() != stats.dims()) {
    throw ValidationError("trajectory has " + std::to_string(traj.dims()) + " dims, stats have " +
                          std::to_string(stats.dims()));
  }
  for (std::size_t d = 0; d < stats.dims(); ++d) {
    if (stats.degenerate(d)) throw ValidationError("dimension " + std::to_string(d) + " is degenerate (q_low == q_high)");
  }
}

}  // namespace

double percentile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw ValidationError("percentile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

NormStats fit_norm_stats(std::span<const Trajectory> trajectories) {
  if (trajectories.empty()) throw ValidationError("no trajectories to fit normalization stats on");
  const std::size_t dims = trajectories.front().dims();
  std::size_t steps = 0;
  for (const auto& t : trajectories) {
    if (t.dims() != dims) throw ValidationError("trajectories disagree on action dimension");
    steps += t.steps();
  }
  NormStats stats;
  stats.count = steps;
  std::vector<double> column;
  column.reserve(steps);
  for (std::size_t d = 0; d < dims; ++d) {
    column.clear();
    for (const auto& t : trajectories) {
      for (std::size_t s = 0; s < t.steps(); ++s) column.push_back(t.at(s, d));
    }
    std::sort(column.begin(), column.end());
    stats.q_low.push_back(percentile(column, kLowQuantile));
    stats.q_high.push_back(percentile(column, kHighQuantile));
  }
  return stats;
}

Trajectory normalize(const Trajectory& traj, const NormStats& stats) {
  check_usable(traj, stats);
  std::vector<double> out(traj.values().begin(), traj.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t d = i % traj.dims();
    const double lo = stats.q_low[d];
    const double hi = stats.q_high[d];
    out[i] = std::clamp(2.0 * (out[i] - lo) / (hi - lo) - 1.0, -1.0, 1.0);
  }
  return Trajectory(traj.steps(), traj.dims(), std::move(out), traj.dt());
}

Trajectory denormalize(const Trajectory& traj, const NormStats& stats) {
  check_usable(traj, stats);
  std::vector<double> out(traj.values().begin(), traj.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t d = i % traj.dims();
    const double lo = stats.q_low[d];
    const double hi = stats.q_high[d];
    out[i] = (out[i] + 1.0) * 0.5 * (hi - lo) + lo;
  }
  return Trajectory(traj.steps(), traj.dims(), std::move(out), traj.dt());
}

std::string serialize_norm_stats(const NormStats& stats) {
  std::string out = "#normstats-v1 count=" + std::to_string(stats.count) + "\n";
  for (std::size_t d = 0; d < stats.dims(); ++d) {
    out += text::format_double(stats.q_low[d]) + '\t' + text::format_double(stats.q_high[d]) + '\n';
  }
  return out;
}

NormStats parse_norm_stats(std::string_view content, const std::string& source) {
  const auto lines = text::split_lines(content);
  constexpr std::string_view prefix = "#normstats-v1 count=";
  if (lines.empty() || !lines[0].starts_with(prefix)) throw ParseError(source, 1, "expected header #normstats-v1 count=<n>");
  auto count = text::parse_u64(std::string_view(lines[0]).substr(prefix.size()));
  if (!count) throw ParseError(source, 1, "malformed count");
  NormStats stats;
  stats.count = *count;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = text::split(lines[i], '\t');
    if (f.size() != 2) throw ParseError(source, i + 1, "expected <q_low>\\t<q_high>");
    auto lo = text::parse_double(f[0]);
    auto hi = text::parse_double(f[1]);
    if (!lo || !hi || !std::isfinite(*lo) || !std::isfinite(*hi)) throw ParseError(source, i + 1, "malformed percentile");
    stats.q_low.push_back(*lo);
    stats.q_high.push_back(*hi);
  }
  if (stats.dims() == 0) throw ParseError(source, lines.size(), "no dimensions");
  return stats;
}

void save_norm_stats(const std::filesystem::path& path, const NormStats& stats) {
  text::write_file(path, serialize_norm_stats(stats));
}

NormStats load_norm_stats(const std::filesystem::path& path) {
  return parse_norm_stats(text::read_file(path), path.string());
}

}  // namespace forge::action
