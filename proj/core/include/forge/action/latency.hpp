#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace forge::action {

enum class DecodeMode { autoregressive, parallel };

std::string_view to_string(DecodeMode m) noexcept;
std::optional<DecodeMode> parse_decode_mode(std::string_view s) noexcept;

struct LatencyModel {
  double cost_per_token = 0.0;  // seconds
  double parallel_overhead = 1.0;
  DecodeMode mode = DecodeMode::parallel;

  // Throws ValidationError unless cost > 0 and overhead >= 1, both finite.
  void validate() const;
};

struct Latency {
  double per_chunk = 0.0;  // seconds to emit one K x D chunk
  double per_step = 0.0;   // per_chunk / K
};

// Autoregressive: one token per action value, K*D*cost. Parallel: one pass
// for the whole chunk, overhead*cost.
double decode_latency(const LatencyModel& model, std::size_t k, std::size_t dims);
Latency decode_latency_breakdown(const LatencyModel& model, std::size_t k, std::size_t dims);

}  // namespace forge::action
