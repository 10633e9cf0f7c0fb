#include "forge/action/trajectory.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>

#include "forge/error.hpp"
#include "forge/text.hpp"

namespace forge::action {
namespace {

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::string_view bytes, std::size_t offset) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
  return v;
}

}  // namespace

Trajectory::Trajectory(std::size_t steps, std::size_t dims, std::vector<double> values, double dt)
    : steps_(steps), dims_(dims), dt_(dt), values_(std::move(values)) {
  if (steps_ < 1 || dims_ < 1) throw ValidationError("trajectory needs at least one step and one dimension");
  if (values_.size() / dims_ != steps_ || values_.size() % dims_ != 0) {
    throw ValidationError("trajectory has " + std::to_string(values_.size()) + " values, expected " +
                          std::to_string(steps_) + "x" + std::to_string(dims_));
  }
  if (!std::isfinite(dt_) || dt_ <= 0.0) throw ValidationError("timestep duration must be finite and positive");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ValidationError("non-finite action at step " + std::to_string(i / dims_) + ", dim " +
                            std::to_string(i % dims_));
    }
  }
}

std::string serialize_trajectory(const Trajectory& traj) {
  std::string out;
  out.reserve(24 + traj.values().size() * 8);
  put_u64(out, traj.steps());
  put_u64(out, traj.dims());
  put_f64(out, traj.dt());
  for (double v : traj.values()) put_f64(out, v);
  return out;
}

Trajectory parse_trajectory(std::string_view bytes, const std::string& source) {
  if (bytes.size() < 24) throw ParseError(source, 0, "truncated trajectory header");
  const std::uint64_t steps = get_u64(bytes, 0);
  const std::uint64_t dims = get_u64(bytes, 8);
  const double dt = std::bit_cast<double>(get_u64(bytes, 16));
  if (dims == 0 || steps == 0) throw ParseError(source, 0, "trajectory needs at least one step and one dimension");
  const std::size_t payload = bytes.size() - 24;
  if (payload % 8 != 0 || payload / 8 / dims != steps || (payload / 8) % dims != 0) {
    throw ParseError(source, 0, "payload size does not match header " + std::to_string(steps) + "x" + std::to_string(dims));
  }
  std::vector<double> values(payload / 8);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = std::bit_cast<double>(get_u64(bytes, 24 + 8 * i));
  try {
    return Trajectory(steps, dims, std::move(values), dt);
  } catch (const ValidationError& e) {
    throw ParseError(source, 0, e.what());
  }
}

void save_trajectory(const std::filesystem::path& path, const Trajectory& traj) {
  text::write_file(path, serialize_trajectory(traj));
}

Trajectory load_trajectory(const std::filesystem::path& path) {
  return parse_trajectory(text::read_file(path), path.string());
}

std::string serialize_chunks(std::span<const ActionChunk> chunks, double dt) {
  std::string out;
  const std::uint64_t k = chunks.empty() ? 0 : chunks.front().length;
  const std::uint64_t d = chunks.empty() ? 0 : chunks.front().dims;
  put_u64(out, chunks.size());
  put_u64(out, k);
  put_u64(out, d);
  put_f64(out, dt);
  for (const auto& c : chunks) {
    put_u64(out, c.origin);
    for (double v : c.values) put_f64(out, v);
  }
  return out;
}

void save_chunks(const std::filesystem::path& path, std::span<const ActionChunk> chunks, double dt) {
  text::write_file(path, serialize_chunks(chunks, dt));
}

}  // namespace forge::action
