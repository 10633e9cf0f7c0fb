#include "forge/extend/filters.hpp"

#include <unicode/uchar.h>
#include <unicode/uscript.h>

#include "forge/error.hpp"
#include "forge/utf8.hpp"

namespace forge::extend {

namespace {

int script_code(const std::string& name) {
  return u_getPropertyValueEnum(UCHAR_SCRIPT, name.c_str());
}

}  // namespace

void FilterRules::validate() const {
  for (const auto& t : allow_list) {
    if (deny_list.contains(t)) throw ValidationError("token appears in both allow and deny lists");
  }
  for (const auto& s : allowed_scripts) {
    if (script_code(s) == UCHAR_INVALID_CODE) throw ValidationError("unknown Unicode script: " + s);
  }
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::denied: return "denied";
    case Verdict::below_frequency: return "below_frequency";
    case Verdict::script_rejected: return "script_rejected";
  }
  return "unknown";
}

Verdict check_token(const FilterRules& rules, std::string_view token, std::optional<std::uint64_t> frequency) {
  const std::string key(token);
  if (rules.deny_list.contains(key)) return Verdict::denied;
  if (rules.allow_list.contains(key)) return Verdict::pass;
  if (rules.min_frequency > 0 && frequency.value_or(0) < rules.min_frequency) return Verdict::below_frequency;
  if (!rules.allowed_scripts.empty()) {
    std::vector<int> allowed;
    allowed.reserve(rules.allowed_scripts.size());
    for (const auto& s : rules.allowed_scripts) allowed.push_back(script_code(s));
    for (std::size_t i = 0; i < token.size();) {
      const std::size_t len = utf8::sequence_length(token, i);
      if (len == 0) return Verdict::script_rejected;
      const char32_t cp = utf8::decode_at(token, i, len);
      i += len;
      UErrorCode err = U_ZERO_ERROR;
      const UScriptCode sc = uscript_getScript(static_cast<UChar32>(cp), &err);
      if (U_FAILURE(err)) return Verdict::script_rejected;
      if (sc == USCRIPT_COMMON || sc == USCRIPT_INHERITED) continue;
      bool ok = false;
      for (int a : allowed) ok = ok || a == sc;
      if (!ok) return Verdict::script_rejected;
    }
  }
  return Verdict::pass;
}

std::string script_name(char32_t cp) {
  UErrorCode err = U_ZERO_ERROR;
  const UScriptCode sc = uscript_getScript(static_cast<UChar32>(cp), &err);
  if (U_FAILURE(err)) return "Unknown";
  return uscript_getName(sc);
}

}  // namespace forge::extend
