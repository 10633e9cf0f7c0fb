#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "forge/bpe/tokenizer.hpp"

namespace forge::extend {

enum class InitStrategy { subtoken_mean, global_mean };

std::string_view to_string(InitStrategy s) noexcept;

// How an external trainer should initialize one new embedding row.
struct PlanEntry {
  bpe::TokenId new_id = 0;
  InitStrategy strategy = InitStrategy::global_mean;
  std::vector<bpe::TokenId> sources;
  std::vector<double> weights;

  bool operator==(const PlanEntry&) const = default;
};

struct ExtensionPlan {
  std::size_t base_size = 0;
  std::vector<PlanEntry> entries;

  bool operator==(const ExtensionPlan&) const = default;
};

// Every token with id >= base size is encoded with the base tokenizer. A
// clean decomposition gives subtoken-mean over those base ids with uniform
// weights (repeats kept positionally); any byte fallback gives global-mean.
// Throws ValidationError when `merged` does not preserve the base ids.
ExtensionPlan plan_embedding_extension(const bpe::Tokenizer& base, const bpe::Vocabulary& merged);

// `#plan-v1` header, then `new_id strategy source_ids... weights...` per entry.
std::string serialize_plan(const ExtensionPlan& plan);
ExtensionPlan parse_plan(std::string_view content, const std::string& source = "<plan>");

}  // namespace forge::extend
