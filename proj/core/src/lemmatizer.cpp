#include "stylo/lemmatizer.hpp"

#include "stylo/error.hpp"
#include "stylo/resources.hpp"
#include "stylo/tagger.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool has_vowel(std::string_view s) {
  for (char c : s) {
    if (is_vowel(c) || c == 'y') return true;
  }
  return false;
}

bool is_consonant(char c) { return c >= 'a' && c <= 'z' && !is_vowel(c); }

std::string strip(const std::string& word, std::size_t n) { return word.substr(0, word.size() - n); }

bool sibilant_stem(std::string_view stem) {
  return stem.ends_with("s") || stem.ends_with("x") || stem.ends_with("z") || stem.ends_with("ch") ||
         stem.ends_with("sh");
}

}  // namespace

const Lemmatizer& Lemmatizer::builtin() {
  static const Lemmatizer lemmatizer =
      parse(resources::embedded(resources::kLemmaExceptions), resources::embedded(resources::kTaggerLexicon));
  return lemmatizer;
}

Lemmatizer Lemmatizer::load(const std::string& exceptions_path, const std::string& lexicon_path) {
  return parse(read_file(exceptions_path), read_file(lexicon_path));
}

Lemmatizer Lemmatizer::parse(std::string_view exceptions_text, std::string_view lexicon_text) {
  Lemmatizer out;
  for (const auto& line : resources::read_versioned(exceptions_text, "STYLO-LEMMAS", 1)) {
    if (line.text.empty()) continue;
    const auto t1 = line.text.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.text.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw ParseError("expected 'POS<TAB>form<TAB>lemma'", line.number);
    const auto pos = parse_upos(std::string_view(line.text).substr(0, t1));
    if (!pos) throw ParseError("unknown POS tag", line.number);
    out.exceptions_[{*pos, line.text.substr(t1 + 1, t2 - t1 - 1)}] = line.text.substr(t2 + 1);
  }
  // Known words come from the tagger lexicon; they let suffix stripping
  // restore a dropped "e" (making -> make) only when the result is a word.
  const auto lexicon_lines = resources::read_versioned(lexicon_text, "STYLO-TAGGER", 1);
  for (const auto& line : lexicon_lines) {
    const auto tab = line.text.find('\t');
    if (tab == std::string::npos) continue;
    if (const auto pos = parse_upos(std::string_view(line.text).substr(tab + 1))) {
      out.known_.insert({*pos, line.text.substr(0, tab)});
    }
  }
  return out;
}

bool Lemmatizer::known(const std::string& word, Upos pos) const { return known_.contains({pos, word}); }

std::string Lemmatizer::repair(const std::string& stem, Upos pos) const {
  if (known(stem, pos)) return stem;
  if (known(stem + "e", pos)) return stem + "e";
  const std::size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && is_consonant(stem[n - 1]) && stem[n - 1] != 'l' &&
      stem[n - 1] != 's' && stem[n - 1] != 'z') {
    return stem.substr(0, n - 1);
  }
  return stem;
}

std::string Lemmatizer::lemmatize(std::string_view surface, Upos pos) const {
  const std::string lower = to_lower_ascii(surface);
  if (auto it = exceptions_.find({pos, lower}); it != exceptions_.end()) return it->second;
  const std::size_t n = lower.size();
  switch (pos) {
    case Upos::NOUN:
      if (n > 4 && lower.ends_with("ies")) return strip(lower, 3) + "y";
      if (n > 3 && lower.ends_with("es") && sibilant_stem(strip(lower, 2))) return strip(lower, 2);
      if (n > 3 && lower.ends_with("s") && !lower.ends_with("ss") && !lower.ends_with("us") &&
          !lower.ends_with("is")) {
        return strip(lower, 1);
      }
      return lower;
    case Upos::VERB:
      if (n > 4 && lower.ends_with("ies")) return strip(lower, 3) + "y";
      if (n > 3 && lower.ends_with("es") && (sibilant_stem(strip(lower, 2)) || lower.ends_with("oes"))) {
        return strip(lower, 2);
      }
      if (n > 3 && lower.ends_with("s") && !lower.ends_with("ss") && !lower.ends_with("us") &&
          !lower.ends_with("is")) {
        return strip(lower, 1);
      }
      if (n > 4 && lower.ends_with("ing")) {
        const std::string stem = strip(lower, 3);
        if (stem.size() >= 2 && has_vowel(stem)) return repair(stem, pos);
        return lower;
      }
      if (n > 4 && lower.ends_with("ied")) return strip(lower, 3) + "y";
      if (n > 3 && lower.ends_with("ed") && !(n <= 5 && lower.ends_with("eed"))) {
        const std::string stem = strip(lower, 2);
        if (has_vowel(stem)) return repair(stem, pos);
      }
      return lower;
    case Upos::ADJ:
      if (known(lower, pos)) return lower;
      if (n > 5 && lower.ends_with("iest")) return strip(lower, 4) + "y";
      if (n > 4 && lower.ends_with("ier")) return strip(lower, 3) + "y";
      if (n > 5 && lower.ends_with("est")) return repair(strip(lower, 3), pos);
      if (n > 4 && lower.ends_with("er")) return repair(strip(lower, 2), pos);
      return lower;
    default:
      return lower;
  }
}

std::string lemmatize(const Token& token) { return Lemmatizer::builtin().lemmatize(token.surface, token.pos); }

}  // namespace stylo
