#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace forge::action {

// T x D actions, row-major, sampled every `dt` seconds.
class Trajectory {
 public:
  Trajectory() = default;
  // Throws ValidationError unless steps >= 1, dims >= 1, values.size() ==
  // steps * dims, all values finite and dt finite and positive.
  Trajectory(std::size_t steps, std::size_t dims, std::vector<double> values, double dt = 1.0);

  std::size_t steps() const noexcept { return steps_; }
  std::size_t dims() const noexcept { return dims_; }
  double dt() const noexcept { return dt_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> row(std::size_t t) const { return std::span<const double>(values_).subspan(t * dims_, dims_); }
  double at(std::size_t t, std::size_t d) const { return values_[t * dims_ + d]; }

  bool operator==(const Trajectory&) const = default;

 private:
  std::size_t steps_ = 0;
  std::size_t dims_ = 0;
  double dt_ = 1.0;
  std::vector<double> values_;
};

struct ActionChunk {
  std::size_t origin = 0;  // trajectory step of the first row
  std::size_t length = 0;  // K
  std::size_t dims = 0;
  std::vector<double> values;  // K x D row-major

  std::span<const double> row(std::size_t k) const { return std::span<const double>(values).subspan(k * dims, dims); }
  bool operator==(const ActionChunk&) const = default;
};

// Little-endian: u64 T, u64 D, f64 dt, then T*D f64 values.
std::string serialize_trajectory(const Trajectory& traj);
Trajectory parse_trajectory(std::string_view bytes, const std::string& source = "<trajectory>");
void save_trajectory(const std::filesystem::path& path, const Trajectory& traj);
Trajectory load_trajectory(const std::filesystem::path& path);

// Little-endian: u64 count, u64 K, u64 D, f64 dt, then per chunk u64 origin
// followed by K*D f64 values.
std::string serialize_chunks(std::span<const ActionChunk> chunks, double dt);
void save_chunks(const std::filesystem::path& path, std::span<const ActionChunk> chunks, double dt);

}  // namespace forge::action
