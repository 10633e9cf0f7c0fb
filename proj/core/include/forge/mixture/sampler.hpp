#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "forge/mixture/alias.hpp"
#include "forge/mixture/spec.hpp"

namespace forge::mixture {

// Draw i is a pure function of (seed, i), so (seed, draw_count) is the
// whole state and restoring it resumes the identical sequence.
struct SamplerState {
  std::uint64_t seed = 0;
  std::uint64_t draw_count = 0;

  // Private state for consumer `stream`; stream 0 is the seed itself.
  static SamplerState for_stream(std::uint64_t seed, std::uint64_t stream);

  std::string serialize() const;
  static SamplerState parse(std::string_view text);

  bool operator==(const SamplerState&) const = default;
};

class MixtureSampler {
 public:
  explicit MixtureSampler(MixtureSpec spec);

  const MixtureSpec& spec() const noexcept { return spec_; }
  const AliasTable& table() const noexcept { return table_; }

  // The `draw`-th dataset index of the stream seeded by `seed`.
  std::size_t draw_at(std::uint64_t seed, std::uint64_t draw) const noexcept;
  std::size_t next_index(SamplerState& state) const noexcept;
  const std::string& sample(SamplerState& state) const;

  // Per-dataset counts of `draws` draws from `state` without advancing it.
  // Identical for every thread count.
  std::vector<std::uint64_t> histogram(const SamplerState& state, std::uint64_t draws, std::size_t threads = 0) const;

 private:
  MixtureSpec spec_;
  AliasTable table_;
};

// Advances `state` and returns the chosen dataset name.
inline const std::string& sample(const MixtureSampler& sampler, SamplerState& state) { return sampler.sample(state); }

// Sampler owning its state, the shape handed to per-consumer loaders.
class SeededSampler {
 public:
  SeededSampler(MixtureSpec spec, std::uint64_t seed) : sampler_(std::move(spec)), state_{seed, 0} {}

  std::size_t next_index() noexcept { return sampler_.next_index(state_); }
  const std::string& next() { return sampler_.sample(state_); }
  const SamplerState& state() const noexcept { return state_; }
  void restore(const SamplerState& s) noexcept { state_ = s; }
  const MixtureSampler& sampler() const noexcept { return sampler_; }

 private:
  MixtureSampler sampler_;
  SamplerState state_;
};

// Example-level mixture: pick a dataset per draw, then take the next record
// of that dataset's own epoch stream (epochs continue indefinitely).
class RecordStream {
 public:
  struct Draw {
    std::size_t dataset = 0;
    std::uint64_t record = 0;
    std::uint64_t epoch = 0;

    bool operator==(const Draw&) const = default;
  };

  // `record_counts` aligned with the spec entries; all must be positive.
  RecordStream(MixtureSpec spec, std::vector<std::uint64_t> record_counts, std::uint64_t seed);

  Draw next();

 private:
  struct Cursor {
    std::uint64_t epoch = 0;
    std::uint64_t position = 0;
    std::vector<std::uint64_t> order;
  };

  MixtureSampler sampler_;
  SamplerState state_;
  std::vector<std::uint64_t> counts_;
  std::vector<Cursor> cursors_;
};

}  // namespace forge::mixture
