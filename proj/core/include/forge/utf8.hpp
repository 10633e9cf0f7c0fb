#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace forge::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// Length of the well-formed sequence starting at text[pos], or 0 when the
// bytes there do not begin a valid UTF-8 scalar value.
std::size_t sequence_length(std::string_view text, std::size_t pos) noexcept;

bool is_valid(std::string_view text) noexcept;

// Decodes the well-formed sequence at text[pos]; caller checks validity first.
char32_t decode_at(std::string_view text, std::size_t pos, std::size_t len) noexcept;

void append(std::string& out, char32_t cp);
std::string encode(char32_t cp);

// Replaces every maximal ill-formed subpart with U+FFFD.
struct SanitizeResult {
  std::string text;
  bool lossy = false;
};
SanitizeResult sanitize(std::string_view text);

// Number of code points; ill-formed bytes count one each.
std::size_t count_code_points(std::string_view text) noexcept;

// Splits into code point substrings; ill-formed bytes become U+FFFD.
std::vector<std::string> split_code_points(std::string_view text);

}  // namespace forge::utf8
