#pragma once

// Seeded random documents for property tests: mixed case words, numerals,
// punctuation, contractions, currency and entity-like capitalized runs.

#include <random>
#include <string>
#include <vector>

namespace stylo::testing {

inline std::string random_document(std::mt19937_64& rng, std::size_t max_tokens = 60) {
  static const std::vector<std::string> pool = {
      "the", "a", "cat", "cats", "dog", "ran", "running", "quickly", "big", "bigger", "red", "French",
      "Germans", "Paris", "London", "John", "Smith", "is", "was", "were", "don't", "it's", "we'll", "and",
      "or", "but", "because", "in", "on", "at", "with", "5", "12", "1999", "3.5", "$", "%", "percent",
      "May", "January", "first", "second", "Dr.", "e.g.", "table", "little", "beautiful", "very", "not",
      "oh", "they", "she", "I", "you", "mirror", "breaks", "to", "go", "went", "gone", "caf\xC3\xA9",
      "na\xC3\xAFve", "\xE2\x80\x94", "(", ")", "\"", ",", ";", ":", ".", "!", "?", "...", "-", "x", "IBM"};
  std::uniform_int_distribution<std::size_t> length(0, max_tokens);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> space(0, 5);
  std::string text;
  const std::size_t n = length(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (!text.empty() && space(rng) != 0) text += ' ';
    text += pool[pick(rng)];
  }
  return text;
}

}  // namespace stylo::testing
