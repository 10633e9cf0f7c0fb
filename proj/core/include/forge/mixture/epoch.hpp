#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace forge::mixture {

inline constexpr std::uint64_t kDefaultEpochs = 2;

// Uniform permutation of [0, record_count) seeded by (seed, epoch).
std::vector<std::uint64_t> epoch_permutation(std::uint64_t record_count, std::uint64_t seed, std::uint64_t epoch);

// Lazily walks `epochs` independent permutations back to back.
class EpochPlan {
 public:
  // Throws ValidationError for zero records or zero epochs.
  EpochPlan(std::uint64_t record_count, std::uint64_t epochs, std::uint64_t seed);

  std::uint64_t record_count() const noexcept { return record_count_; }
  std::uint64_t epochs() const noexcept { return epochs_; }
  std::uint64_t total() const noexcept { return record_count_ * epochs_; }
  bool done() const noexcept { return position_ >= total(); }
  std::uint64_t current_epoch() const noexcept { return position_ / record_count_; }

  // Next index; throws ValidationError once the plan is exhausted.
  std::uint64_t next();

 private:
  std::uint64_t record_count_;
  std::uint64_t epochs_;
  std::uint64_t seed_;
  std::uint64_t position_ = 0;
  std::uint64_t loaded_epoch_ = UINT64_MAX;
  std::vector<std::uint64_t> order_;
};

// Whole stream: epoch 0's permutation, then epoch 1's, ...
std::vector<std::uint64_t> epoch_plan(std::uint64_t record_count, std::uint64_t epochs, std::uint64_t seed);

// Little-endian 64-bit integers, no header.
void write_index_stream(const std::filesystem::path& path, std::span<const std::uint64_t> indices);
std::vector<std::uint64_t> read_index_stream(const std::filesystem::path& path);
std::string encode_index_stream(std::span<const std::uint64_t> indices);

}  // namespace forge::mixture
