#include "forge/bpe/pretokenize.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "forge/bpe/vocabulary.hpp"
#include "forge/error.hpp"
#include "forge/utf8.hpp"

namespace forge::bpe {

std::string nfkc(std::string_view utf8_text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* norm = icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status)) throw Error(std::string("ICU NFKC unavailable: ") + u_errorName(status));
  const icu::UnicodeString src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8_text.data(), static_cast<std::int32_t>(utf8_text.size())));
  const icu::UnicodeString dst = norm->normalize(src, status);
  if (U_FAILURE(status)) throw Error(std::string("NFKC normalization failed: ") + u_errorName(status));
  std::string out;
  dst.toUTF8String(out);
  return out;
}

std::vector<Word> split_words(std::string_view text) {
  std::vector<Word> words;
  Word current;
  for (std::size_t i = 0; i < text.size();) {
    const std::size_t len = utf8::sequence_length(text, i);
    Unit u;
    u.offset = static_cast<std::uint32_t>(i);
    if (len == 0) {
      u.cp = static_cast<unsigned char>(text[i]);
      u.length = 1;
      u.opaque = true;
      current.push_back(u);
      ++i;
      continue;
    }
    u.cp = utf8::decode_at(text, i, len);
    u.length = static_cast<std::uint8_t>(len);
    if (u.cp == U' ') {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
      u.cp = kWordBoundaryCodePoint;
      u.boundary = true;
    } else if (u.cp == kWordBoundaryCodePoint) {
      u.opaque = true;
    }
    current.push_back(u);
    i += len;
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::vector<std::u32string> training_words(std::string_view text, bool normalize) {
  std::string normalized;
  if (normalize) {
    normalized = nfkc(text);
    text = normalized;
  }
  std::vector<std::u32string> words;
  std::u32string current;
  auto flush = [&] {
    if (!current.empty()) words.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < text.size();) {
    const std::size_t len = utf8::sequence_length(text, i);
    if (len == 0) {
      ++i;
      continue;
    }
    const char32_t cp = utf8::decode_at(text, i, len);
    i += len;
    if (cp == U' ') {
      flush();
      current.push_back(kWordBoundaryCodePoint);
    } else if (cp == kWordBoundaryCodePoint) {
      flush();
    } else {
      current.push_back(cp);
    }
  }
  flush();
  return words;
}

}  // namespace forge::bpe
