#include "forge/mixture/alias.hpp"

#include <numeric>

#include "forge/error.hpp"
#include "forge/rng.hpp"

namespace forge::mixture {

AliasTable::AliasTable(std::span<const double> weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw ValidationError("alias table needs at least one weight");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw ValidationError("alias table weights must be positive");
    sum += w;
  }
  prob_.assign(n, 1.0);
  alias_.resize(n);
  std::iota(alias_.begin(), alias_.end(), 0u);

  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / sum;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    // Subtract the donated mass as (l - 1) + s to limit cancellation error.
    scaled[l] = (scaled[l] - 1.0) + scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (auto i : large) prob_[i] = 1.0;
  for (auto i : small) prob_[i] = 1.0;
}

std::size_t AliasTable::pick(std::uint64_t column_word, std::uint64_t coin_word) const noexcept {
  const auto column = static_cast<std::size_t>(rng::scale_to(column_word, prob_.size()));
  return rng::to_unit(coin_word) < prob_[column] ? column : alias_[column];
}

std::vector<double> AliasTable::reconstructed() const {
  const std::size_t n = prob_.size();
  std::vector<double> mass(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    mass[i] += prob_[i];
    if (prob_[i] < 1.0) mass[alias_[i]] += 1.0 - prob_[i];
  }
  for (double& m : mass) m /= static_cast<double>(n);
  return mass;
}

}  // namespace forge::mixture
