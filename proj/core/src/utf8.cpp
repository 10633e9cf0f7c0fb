#include "forge/utf8.hpp"

namespace forge::utf8 {

namespace {

inline bool is_cont(unsigned char c) { return (c & 0xC0) == 0x80; }

}  // namespace

std::size_t sequence_length(std::string_view text, std::size_t pos) noexcept {
  const std::size_t n = text.size();
  if (pos >= n) return 0;
  const auto b0 = static_cast<unsigned char>(text[pos]);
  if (b0 < 0x80) return 1;
  auto at = [&](std::size_t i) { return static_cast<unsigned char>(text[pos + i]); };
  if (b0 >= 0xC2 && b0 <= 0xDF) {
    return (pos + 1 < n && is_cont(at(1))) ? 2 : 0;
  }
  if (b0 >= 0xE0 && b0 <= 0xEF) {
    if (pos + 2 >= n) return 0;
    const unsigned char b1 = at(1);
    if (b0 == 0xE0 && (b1 < 0xA0 || b1 > 0xBF)) return 0;
    if (b0 == 0xED && (b1 < 0x80 || b1 > 0x9F)) return 0;
    if (!is_cont(b1) || !is_cont(at(2))) return 0;
    return 3;
  }
  if (b0 >= 0xF0 && b0 <= 0xF4) {
    if (pos + 3 >= n) return 0;
    const unsigned char b1 = at(1);
    if (b0 == 0xF0 && (b1 < 0x90 || b1 > 0xBF)) return 0;
    if (b0 == 0xF4 && (b1 < 0x80 || b1 > 0x8F)) return 0;
    if (!is_cont(b1) || !is_cont(at(2)) || !is_cont(at(3))) return 0;
    return 4;
  }
  return 0;
}

bool is_valid(std::string_view text) noexcept {
  for (std::size_t i = 0; i < text.size();) {
    const std::size_t len = sequence_length(text, i);
    if (len == 0) return false;
    i += len;
  }
  return true;
}

char32_t decode_at(std::string_view text, std::size_t pos, std::size_t len) noexcept {
  auto b = [&](std::size_t i) { return static_cast<char32_t>(static_cast<unsigned char>(text[pos + i])); };
  switch (len) {
    case 1: return b(0);
    case 2: return ((b(0) & 0x1F) << 6) | (b(1) & 0x3F);
    case 3: return ((b(0) & 0x0F) << 12) | ((b(1) & 0x3F) << 6) | (b(2) & 0x3F);
    case 4:
      return ((b(0) & 0x07) << 18) | ((b(1) & 0x3F) << 12) | ((b(2) & 0x3F) << 6) | (b(3) & 0x3F);
    default: return kReplacement;
  }
}

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode(char32_t cp) {
  std::string s;
  append(s, cp);
  return s;
}

SanitizeResult sanitize(std::string_view text) {
  SanitizeResult r;
  r.text.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t len = sequence_length(text, i);
    if (len != 0) {
      r.text.append(text.substr(i, len));
      i += len;
      continue;
    }
    // Maximal subpart: a lead byte followed by as many continuation bytes as
    // could still be a valid prefix collapses to a single replacement.
    r.lossy = true;
    const auto b0 = static_cast<unsigned char>(text[i]);
    std::size_t expect = 0;
    if (b0 >= 0xC2 && b0 <= 0xDF) expect = 1;
    else if (b0 >= 0xE0 && b0 <= 0xEF) expect = 2;
    else if (b0 >= 0xF0 && b0 <= 0xF4) expect = 3;
    std::size_t j = i + 1;
    for (std::size_t k = 0; k < expect && j < text.size(); ++k, ++j) {
      const auto b = static_cast<unsigned char>(text[j]);
      unsigned char lo = 0x80, hi = 0xBF;
      if (k == 0) {
        if (b0 == 0xE0) lo = 0xA0;
        if (b0 == 0xED) hi = 0x9F;
        if (b0 == 0xF0) lo = 0x90;
        if (b0 == 0xF4) hi = 0x8F;
      }
      if (b < lo || b > hi) break;
    }
    append(r.text, kReplacement);
    i = j;
  }
  return r;
}

std::size_t count_code_points(std::string_view text) noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < text.size(); ++count) {
    const std::size_t len = sequence_length(text, i);
    i += len == 0 ? 1 : len;
  }
  return count;
}

std::vector<std::string> split_code_points(std::string_view text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size();) {
    const std::size_t len = sequence_length(text, i);
    if (len == 0) {
      out.push_back(encode(kReplacement));
      ++i;
    } else {
      out.emplace_back(text.substr(i, len));
      i += len;
    }
  }
  return out;
}

}  // namespace forge::utf8
