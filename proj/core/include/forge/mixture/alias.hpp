#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace forge::mixture {

// Walker/Vose alias table: O(n) build, O(1) draw from two uniform words.
class AliasTable {
 public:
  AliasTable() = default;
  // `weights` must be positive; they are normalized internally.
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const noexcept { return prob_.size(); }
  std::span<const double> probabilities() const noexcept { return prob_; }
  std::span<const std::uint32_t> aliases() const noexcept { return alias_; }

  // column from `column_word`, coin from `coin_word`.
  std::size_t pick(std::uint64_t column_word, std::uint64_t coin_word) const noexcept;

  // Probability mass each entry receives, summed over all cells.
  std::vector<double> reconstructed() const;

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace forge::mixture
