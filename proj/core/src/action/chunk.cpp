#include "forge/action/chunk.hpp"

#include <algorithm>

#include "forge/error.hpp"

namespace forge::action {

std::string_view to_string(PadPolicy p) noexcept { return p == PadPolicy::zero ? "zero" : "repeat-last"; }

std::optional<PadPolicy> parse_pad_policy(std::string_view s) noexcept {
  if (s == "repeat-last") return PadPolicy::repeat_last;
  if (s == "zero") return PadPolicy::zero;
  return std::nullopt;
}

std::size_t chunk_count(std::size_t steps, std::size_t k, std::size_t stride) {
  if (k < 1) throw ValidationError("chunk size must be at least 1");
  if (stride < 1 || stride > k) throw ValidationError("stride must be in [1, K]");
  if (steps <= k) return 1;
  return 1 + (steps - k + stride - 1) / stride;
}

std::vector<ActionChunk> chunk_trajectory(const Trajectory& traj, std::size_t k, std::size_t stride, PadPolicy pad) {
  const std::size_t n = chunk_count(traj.steps(), k, stride);
  const std::size_t dims = traj.dims();
  std::vector<ActionChunk> chunks;
  chunks.reserve(n);
  for (std::size_t c = 0; c < n; ++c) {
    ActionChunk chunk{c * stride, k, dims, {}};
    chunk.values.reserve(k * dims);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t t = chunk.origin + i;
      if (t < traj.steps()) {
        auto row = traj.row(t);
        chunk.values.insert(chunk.values.end(), row.begin(), row.end());
      } else if (pad == PadPolicy::repeat_last) {
        auto row = traj.row(traj.steps() - 1);
        chunk.values.insert(chunk.values.end(), row.begin(), row.end());
      } else {
        chunk.values.insert(chunk.values.end(), dims, 0.0);
      }
    }
    chunks.push_back(std::move(chunk));
  }
  return chunks;
}

Trajectory reassemble(std::span<const ActionChunk> chunks, std::size_t stride, double dt,
                      std::optional<std::size_t> length) {
  if (chunks.empty()) throw ValidationError("no chunks to reassemble");
  const std::size_t k = chunks.front().length;
  const std::size_t dims = chunks.front().dims;
  if (k < 1 || dims < 1) throw ValidationError("empty chunk");
  if (stride < 1 || stride > k) throw ValidationError("stride must be in [1, K]");
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    const auto& ch = chunks[c];
    if (ch.length != k || ch.dims != dims || ch.values.size() != k * dims) {
      throw ValidationError("chunk " + std::to_string(c) + " has inconsistent shape");
    }
    if (ch.origin != c * stride) throw ValidationError("chunk " + std::to_string(c) + " is out of order for the stride");
  }
  const std::size_t full = (chunks.size() - 1) * stride + k;
  const std::size_t steps = length.value_or(full);
  if (steps < 1 || steps > full) throw ValidationError("reassembly length outside [1, " + std::to_string(full) + "]");
  std::vector<double> values(steps * dims);
  for (std::size_t t = 0; t < steps; ++t) {
    const std::size_t c = std::min(t / stride, chunks.size() - 1);
    const std::size_t offset = t - chunks[c].origin;
    auto row = chunks[c].row(offset);
    std::copy(row.begin(), row.end(), values.begin() + static_cast<std::ptrdiff_t>(t * dims));
  }
  return Trajectory(steps, dims, std::move(values), dt);
}

}  // namespace forge::action
