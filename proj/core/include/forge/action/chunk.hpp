#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "forge/action/trajectory.hpp"

namespace forge::action {

enum class PadPolicy { repeat_last, zero };

std::string_view to_string(PadPolicy p) noexcept;
std::optional<PadPolicy> parse_pad_policy(std::string_view s) noexcept;

// Number of chunks needed to cover `steps` with windows of `k` every `stride`.
std::size_t chunk_count(std::size_t steps, std::size_t k, std::size_t stride);

// Windows of K steps starting every `stride` steps; the last window is padded
// past the end. Throws ValidationError if K < 1, stride < 1 or stride > K.
std::vector<ActionChunk> chunk_trajectory(const Trajectory& traj, std::size_t k, std::size_t stride,
                                          PadPolicy pad = PadPolicy::repeat_last);

// Inverse of chunk_trajectory. Each step comes from the latest chunk covering
// it. Without `length` the result keeps the padded tail.
Trajectory reassemble(std::span<const ActionChunk> chunks, std::size_t stride, double dt = 1.0,
                      std::optional<std::size_t> length = std::nullopt);

}  // namespace forge::action
