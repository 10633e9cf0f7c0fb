#include "forge/action/latency.hpp"

#include <cmath>

#include "forge/error.hpp"

namespace forge::action {

std::string_view to_string(DecodeMode m) noexcept { return m == DecodeMode::parallel ? "parallel" : "autoregressive"; }

std::optional<DecodeMode> parse_decode_mode(std::string_view s) noexcept {
  if (s == "parallel") return DecodeMode::parallel;
  if (s == "autoregressive") return DecodeMode::autoregressive;
  return std::nullopt;
}

void LatencyModel::validate() const {
  if (!std::isfinite(cost_per_token) || cost_per_token <= 0.0) throw ValidationError("cost_per_token must be positive");
  if (!std::isfinite(parallel_overhead) || parallel_overhead < 1.0) {
    throw ValidationError("parallel_overhead must be at least 1");
  }
}

double decode_latency(const LatencyModel& model, std::size_t k, std::size_t dims) {
  model.validate();
  if (k < 1 || dims < 1) throw ValidationError("K and D must be at least 1");
  if (model.mode == DecodeMode::parallel) return model.parallel_overhead * model.cost_per_token;
  return static_cast<double>(k) * static_cast<double>(dims) * model.cost_per_token;
}

Latency decode_latency_breakdown(const LatencyModel& model, std::size_t k, std::size_t dims) {
  const double chunk = decode_latency(model, k, dims);
  return Latency{chunk, chunk / static_cast<double>(k)};
}

}  // namespace forge::action
