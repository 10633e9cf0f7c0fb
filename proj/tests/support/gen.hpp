#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "forge/action/trajectory.hpp"

namespace forge::testing {

using Rng = std::mt19937_64;

// UTF-8 encoding written out by hand so tests do not lean on the library.
std::string utf8_of(char32_t cp);

// Valid UTF-8 with ASCII, controls, spaces, Latin-1, combining marks, CJK,
// emoji, U+2581 and the replacement character.
std::string random_utf8(Rng& rng, std::size_t max_code_points);

// Small-alphabet text (letters, CJK, spaces, snippets such as "<0x41>" or
// "<s>") that drives many merges, at most `max_chars` code points.
std::string random_training_doc(Rng& rng, std::size_t max_chars);
std::vector<std::string> random_training_corpus(Rng& rng, std::size_t max_total_chars);

// Documents of CJK ideographs from U+4E00.. drawn with a Zipf-like law.
std::vector<std::string> zipf_cjk_corpus(Rng& rng, std::size_t documents, std::size_t doc_chars, std::size_t distinct);

// Sum of low-frequency sinusoids: smooth, finite, T x D.
action::Trajectory smooth_trajectory(Rng& rng, std::size_t steps, std::size_t dims);
action::Trajectory add_noise(Rng& rng, const action::Trajectory& traj, double amplitude);

}  // namespace forge::testing
