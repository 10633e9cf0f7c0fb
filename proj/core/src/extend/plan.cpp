#include "forge/extend/plan.hpp"

#include "forge/error.hpp"
#include "forge/text.hpp"

namespace forge::extend {

std::string_view to_string(InitStrategy s) noexcept {
  return s == InitStrategy::subtoken_mean ? "subtoken-mean" : "global-mean";
}

ExtensionPlan plan_embedding_extension(const bpe::Tokenizer& base, const bpe::Vocabulary& merged) {
  const bpe::Vocabulary& bv = base.vocab();
  if (merged.size() < bv.size() || merged.special_count() != bv.special_count()) {
    throw ValidationError("merged vocabulary does not extend the base vocabulary");
  }
  for (bpe::TokenId id = 0; id < bv.size(); ++id) {
    if (merged.at(id).bytes != bv.at(id).bytes) {
      throw ValidationError("merged vocabulary changes base token id " + std::to_string(id));
    }
  }
  ExtensionPlan plan;
  plan.base_size = bv.size();
  plan.entries.reserve(merged.size() - bv.size());
  for (bpe::TokenId id = static_cast<bpe::TokenId>(bv.size()); id < merged.size(); ++id) {
    std::string display;
    const std::string_view bytes = merged.at(id).bytes;
    for (std::size_t pos = 0; pos < bytes.size();) {
      const std::size_t hit = bytes.find(bpe::kWordBoundary, pos);
      if (hit == std::string_view::npos) {
        display.append(bytes.substr(pos));
        break;
      }
      display.append(bytes.substr(pos, hit - pos));
      display.push_back(' ');
      pos = hit + bpe::kWordBoundary.size();
    }
    const bpe::TokenSequence ids = base.encode(display);
    bool fallback = ids.empty();
    for (bpe::TokenId t : ids) fallback = fallback || !bv.is_normal(t);
    PlanEntry e;
    e.new_id = id;
    if (fallback) {
      e.strategy = InitStrategy::global_mean;
    } else {
      e.strategy = InitStrategy::subtoken_mean;
      e.sources = ids;
      e.weights.assign(ids.size(), 1.0 / static_cast<double>(ids.size()));
    }
    plan.entries.push_back(std::move(e));
  }
  return plan;
}

std::string serialize_plan(const ExtensionPlan& plan) {
  std::string out = "#plan-v1 base_size=" + std::to_string(plan.base_size) + "\n";
  for (const auto& e : plan.entries) {
    out += std::to_string(e.new_id);
    out += ' ';
    out += to_string(e.strategy);
    for (auto s : e.sources) {
      out += ' ';
      out += std::to_string(s);
    }
    for (double w : e.weights) {
      out += ' ';
      out += text::format_double(w);
    }
    out += '\n';
  }
  return out;
}

ExtensionPlan parse_plan(std::string_view content, const std::string& source) {
  const auto lines = text::split_lines(content);
  constexpr std::string_view kHeader = "#plan-v1 base_size=";
  if (lines.empty() || lines[0].rfind(kHeader, 0) != 0) throw ParseError(source, 1, "expected #plan-v1 header");
  auto base = text::parse_u64(std::string_view(lines[0]).substr(kHeader.size()));
  if (!base) throw ParseError(source, 1, "malformed base_size");
  ExtensionPlan plan;
  plan.base_size = *base;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto f = text::split(lines[i], ' ');
    if (f.size() < 2) throw ParseError(source, line_no, "expected <new_id> <strategy> ...");
    PlanEntry e;
    auto id = text::parse_u64(f[0]);
    if (!id) throw ParseError(source, line_no, "malformed token id");
    e.new_id = static_cast<bpe::TokenId>(*id);
    if (f[1] == "subtoken-mean") e.strategy = InitStrategy::subtoken_mean;
    else if (f[1] == "global-mean") e.strategy = InitStrategy::global_mean;
    else throw ParseError(source, line_no, "unknown strategy");
    const std::size_t rest = f.size() - 2;
    if (rest % 2 != 0) throw ParseError(source, line_no, "source ids and weights differ in count");
    for (std::size_t k = 0; k < rest / 2; ++k) {
      auto s = text::parse_u64(f[2 + k]);
      auto w = text::parse_double(f[2 + rest / 2 + k]);
      if (!s || !w) throw ParseError(source, line_no, "malformed source id or weight");
      e.sources.push_back(static_cast<bpe::TokenId>(*s));
      e.weights.push_back(*w);
    }
    if (e.strategy == InitStrategy::subtoken_mean && e.sources.empty()) {
      throw ParseError(source, line_no, "subtoken-mean entry needs at least one source");
    }
    plan.entries.push_back(std::move(e));
  }
  return plan;
}

}  // namespace forge::extend
