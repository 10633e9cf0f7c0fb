#include "forge/mixture/epoch.hpp"

#include <numeric>

#include "forge/error.hpp"
#include "forge/rng.hpp"
#include "forge/text.hpp"

namespace forge::mixture {

std::vector<std::uint64_t> epoch_permutation(std::uint64_t record_count, std::uint64_t seed, std::uint64_t epoch) {
  std::vector<std::uint64_t> order(record_count);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  rng::SplitMix gen(rng::derive_seed(seed, epoch));
  for (std::uint64_t i = record_count; i > 1; --i) {
    const std::uint64_t j = gen.below(i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

EpochPlan::EpochPlan(std::uint64_t record_count, std::uint64_t epochs, std::uint64_t seed)
    : record_count_(record_count), epochs_(epochs), seed_(seed) {
  if (record_count == 0) throw ValidationError("epoch plan needs at least one record");
  if (epochs == 0) throw ValidationError("epoch plan needs at least one epoch");
}

std::uint64_t EpochPlan::next() {
  if (done()) throw ValidationError("epoch plan exhausted");
  const std::uint64_t epoch = position_ / record_count_;
  if (epoch != loaded_epoch_) {
    order_ = epoch_permutation(record_count_, seed_, epoch);
    loaded_epoch_ = epoch;
  }
  return order_[position_++ % record_count_];
}

std::vector<std::uint64_t> epoch_plan(std::uint64_t record_count, std::uint64_t epochs, std::uint64_t seed) {
  EpochPlan plan(record_count, epochs, seed);
  std::vector<std::uint64_t> out;
  out.reserve(plan.total());
  while (!plan.done()) out.push_back(plan.next());
  return out;
}

std::string encode_index_stream(std::span<const std::uint64_t> indices) {
  std::string bytes;
  bytes.resize(indices.size() * 8);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (int b = 0; b < 8; ++b) bytes[i * 8 + b] = static_cast<char>((indices[i] >> (8 * b)) & 0xFF);
  }
  return bytes;
}

void write_index_stream(const std::filesystem::path& path, std::span<const std::uint64_t> indices) {
  text::write_file(path, encode_index_stream(indices));
}

std::vector<std::uint64_t> read_index_stream(const std::filesystem::path& path) {
  const std::string bytes = text::read_file(path);
  if (bytes.size() % 8 != 0) throw ValidationError("index stream length is not a multiple of 8");
  std::vector<std::uint64_t> out(bytes.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i * 8 + b])) << (8 * b);
    out[i] = v;
  }
  return out;
}

}  // namespace forge::mixture
