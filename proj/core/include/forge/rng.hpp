#pragma once

#include <cstdint>

namespace forge::rng {

__extension__ using uint128 = unsigned __int128;

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// The index-th output of a SplitMix64 stream seeded with `seed`. Random
// access makes every stream position reproducible from (seed, index) alone.
constexpr std::uint64_t splitmix_at(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed + (index + 1) * kGolden);
}

// Independent child seed for a named sub-stream (thread, epoch, dataset).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(seed ^ mix64(stream + kGolden));
}

// 53-bit uniform double in [0, 1).
constexpr double to_unit(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// floor(x * n / 2^64): maps a uniform 64-bit word onto [0, n).
inline std::uint64_t scale_to(std::uint64_t x, std::uint64_t n) noexcept {
  return static_cast<std::uint64_t>((static_cast<uint128>(x) * n) >> 64);
}

// Sequential SplitMix64 generator with an exposed position.
class SplitMix {
 public:
  explicit constexpr SplitMix(std::uint64_t seed, std::uint64_t position = 0) noexcept
      : seed_(seed), position_(position) {}

  constexpr std::uint64_t next() noexcept { return splitmix_at(seed_, position_++); }

  // Unbiased integer in [0, bound) by rejection on the low product word.
  std::uint64_t below(std::uint64_t bound) noexcept {
    std::uint64_t x = next();
    uint128 m = static_cast<uint128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next();
        m = static_cast<uint128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  constexpr std::uint64_t seed() const noexcept { return seed_; }
  constexpr std::uint64_t position() const noexcept { return position_; }

 private:
  std::uint64_t seed_;
  std::uint64_t position_;
};

}  // namespace forge::rng
