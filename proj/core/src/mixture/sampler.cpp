#include "forge/mixture/sampler.hpp"

#include "forge/error.hpp"
#include "forge/mixture/epoch.hpp"
#include "forge/parallel.hpp"
#include "forge/rng.hpp"
#include "forge/text.hpp"

namespace forge::mixture {

SamplerState SamplerState::for_stream(std::uint64_t seed, std::uint64_t stream) {
  return SamplerState{stream == 0 ? seed : rng::derive_seed(seed, stream), 0};
}

std::string SamplerState::serialize() const {
  return "sampler-v1 seed=" + std::to_string(seed) + " draw_count=" + std::to_string(draw_count);
}

SamplerState SamplerState::parse(std::string_view s) {
  const auto f = text::split(text::trim(s), ' ');
  if (f.size() != 3 || f[0] != "sampler-v1" || f[1].rfind("seed=", 0) != 0 || f[2].rfind("draw_count=", 0) != 0) {
    throw ValidationError("malformed sampler state");
  }
  auto seed = text::parse_u64(f[1].substr(5));
  auto count = text::parse_u64(f[2].substr(11));
  if (!seed || !count) throw ValidationError("malformed sampler state");
  return SamplerState{*seed, *count};
}

MixtureSampler::MixtureSampler(MixtureSpec spec) : spec_(std::move(spec)), table_(spec_.normalized()) {}

std::size_t MixtureSampler::draw_at(std::uint64_t seed, std::uint64_t draw) const noexcept {
  return table_.pick(rng::splitmix_at(seed, 2 * draw), rng::splitmix_at(seed, 2 * draw + 1));
}

std::size_t MixtureSampler::next_index(SamplerState& state) const noexcept {
  return draw_at(state.seed, state.draw_count++);
}

const std::string& MixtureSampler::sample(SamplerState& state) const { return spec_.name(next_index(state)); }

std::vector<std::uint64_t> MixtureSampler::histogram(const SamplerState& state, std::uint64_t draws,
                                                     std::size_t threads) const {
  threads = resolve_threads(threads);
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(spec_.size(), 0));
  parallel_for(static_cast<std::size_t>(draws), threads, [&](std::size_t begin, std::size_t end, std::size_t w) {
    auto& local = partial[w];
    for (std::size_t i = begin; i < end; ++i) ++local[draw_at(state.seed, state.draw_count + i)];
  });
  std::vector<std::uint64_t> total(spec_.size(), 0);
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += p[k];
  }
  return total;
}

RecordStream::RecordStream(MixtureSpec spec, std::vector<std::uint64_t> record_counts, std::uint64_t seed)
    : sampler_(std::move(spec)), state_{seed, 0}, counts_(std::move(record_counts)) {
  if (counts_.size() != sampler_.spec().size()) {
    throw ValidationError("record counts do not match the mixture entries");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] == 0) throw ValidationError("dataset '" + sampler_.spec().name(i) + "' has no records");
  }
  cursors_.resize(counts_.size());
}

RecordStream::Draw RecordStream::next() {
  const std::size_t d = sampler_.next_index(state_);
  Cursor& c = cursors_[d];
  if (c.order.empty() || c.position == counts_[d]) {
    if (!c.order.empty()) ++c.epoch;
    c.position = 0;
    c.order = epoch_permutation(counts_[d], rng::derive_seed(state_.seed, d + 1), c.epoch);
  }
  return Draw{d, c.order[c.position++], c.epoch};
}

}  // namespace forge::mixture
