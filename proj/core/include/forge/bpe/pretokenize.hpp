#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace forge::bpe {

// NFKC normalization; ill-formed input bytes become U+FFFD.
std::string nfkc(std::string_view utf8);

// One input code point (or one ill-formed byte) inside a word.
struct Unit {
  char32_t cp = 0;
  std::uint32_t offset = 0;  // byte offset into the source text
  std::uint8_t length = 0;   // byte length in the source text
  // Opaque units never match vocabulary entries and always use byte
  // fallback: ill-formed bytes and literal U+2581 characters.
  bool opaque = false;
  // Set for the U+2581 marker that stands in for a source space.
  bool boundary = false;
};

using Word = std::vector<Unit>;

// Sentence-piece style split: every ASCII space starts a new word whose
// first unit is the U+2581 boundary marker. Text without spaces (e.g.
// Chinese) stays a single word.
std::vector<Word> split_words(std::string_view text);

// Words used for training: code point strings with the boundary marker
// spelled out. Literal U+2581 in the text separates words and is dropped;
// ill-formed bytes are dropped.
std::vector<std::u32string> training_words(std::string_view text, bool normalize);

}  // namespace forge::bpe
