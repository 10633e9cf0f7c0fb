#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace forge::extend {

// Reproducible stand-in for manual vocabulary review. Token sets hold
// vocabulary bytes (spaces as U+2581).
struct FilterRules {
  std::uint64_t min_frequency = 0;
  // Unicode script names (long or short ICU aliases). Empty accepts any
  // script; Common and Inherited characters always pass.
  std::vector<std::string> allowed_scripts;
  // Allow-listed tokens skip the frequency and script checks.
  std::unordered_set<std::string> allow_list;
  std::unordered_set<std::string> deny_list;

  // Throws ValidationError when allow and deny overlap or a script name is unknown.
  void validate() const;
  bool empty() const noexcept {
    return min_frequency == 0 && allowed_scripts.empty() && allow_list.empty() && deny_list.empty();
  }
};

enum class Verdict { pass, denied, below_frequency, script_rejected };

std::string_view to_string(Verdict v) noexcept;

// `frequency` is the token's count in the source's frequency table, if any;
// an unknown frequency counts as zero.
Verdict check_token(const FilterRules& rules, std::string_view token, std::optional<std::uint64_t> frequency);

// ICU long script name of a code point, e.g. "Han", "Latin", "Common".
std::string script_name(char32_t cp);

}  // namespace forge::extend
