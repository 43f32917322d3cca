#include "stylo/textpipe.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y'; }

bool is_letter(char c) { return c >= 'a' && c <= 'z'; }

}  // namespace

int count_syllables(std::string_view surface) {
  if (!has_alpha(surface)) return 0;
  const std::string word = to_lower_ascii(surface);
  int groups = 0;
  bool in_group = false;
  for (char c : word) {
    const bool vowel = is_vowel(c);
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }
  // A final "e" is silent when it is a vowel group of its own, except in a
  // consonant + "le" ending ("table").
  const std::size_t n = word.size();
  if (groups > 1 && n >= 2 && word[n - 1] == 'e' && is_letter(word[n - 2]) && !is_vowel(word[n - 2])) {
    const bool consonant_le =
        word[n - 2] == 'l' && n >= 3 && is_letter(word[n - 3]) && !is_vowel(word[n - 3]);
    if (!consonant_le) --groups;
  }
  return groups < 1 ? 1 : groups;
}

}  // namespace stylo
