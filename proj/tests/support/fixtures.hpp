#pragma once

// Hand-annotated fixture sentences and an independent evaluator for the
// designated fixture features. The annotations are written out by hand
// (universal POS, lemma, syllables by the vowel-group rule, stop-word
// membership); the evaluator recomputes each feature from them with the
// documented formulas, never through the library's extractor.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stylo/textpipe.hpp"

namespace stylo::testing {

struct HandToken {
  std::string surface;
  Upos pos;
  std::string lemma;
  int syllables;
  bool stop;
};

struct Fixture {
  std::string text;
  std::vector<HandToken> tokens;
  std::size_t sentences;
  std::vector<EntityType> entities;
};

inline const std::vector<Fixture>& fixtures() {
  using enum Upos;
  static const std::vector<Fixture> all = {
      {"The red red mirror breaks.",
       {{"The", DET, "the", 1, true},
        {"red", ADJ, "red", 1, false},
        {"red", ADJ, "red", 1, false},
        {"mirror", NOUN, "mirror", 2, false},
        {"breaks", VERB, "break", 1, false},
        {".", PUNCT, ".", 0, false}},
       1,
       {}},
      {"Germans and Italians visited 12 big cities.",
       {{"Germans", PROPN, "germans", 2, false},
        {"and", CCONJ, "and", 1, true},
        {"Italians", PROPN, "italians", 3, false},
        {"visited", VERB, "visit", 3, false},
        {"12", NUM, "12", 0, false},
        {"big", ADJ, "big", 1, false},
        {"cities", NOUN, "city", 2, false},
        {".", PUNCT, ".", 0, false}},
       1,
       {EntityType::NORP, EntityType::NORP, EntityType::CARDINAL}},
      {"Two old doctors were running quickly.",
       {{"Two", NUM, "two", 1, false},
        {"old", ADJ, "old", 1, false},
        {"doctors", NOUN, "doctor", 2, false},
        {"were", AUX, "be", 1, true},
        {"running", VERB, "run", 2, false},
        {"quickly", ADV, "quickly", 2, false},
        {".", PUNCT, ".", 0, false}},
       1,
       {EntityType::CARDINAL}},
      {"She didn't see the 2 red birds.",
       {{"She", PRON, "she", 1, true},
        {"did", AUX, "do", 1, true},
        {"n't", PART, "not", 1, true},
        {"see", VERB, "see", 1, false},
        {"the", DET, "the", 1, true},
        {"2", NUM, "2", 0, false},
        {"red", ADJ, "red", 1, false},
        {"birds", NOUN, "bird", 1, false},
        {".", PUNCT, ".", 0, false}},
       1,
       {EntityType::CARDINAL}},
      {"The cats saw 3 cats. A cat sees 5 dogs, 3 birds and 2 fish!",
       {{"The", DET, "the", 1, true},
        {"cats", NOUN, "cat", 1, false},
        {"saw", VERB, "see", 1, false},
        {"3", NUM, "3", 0, false},
        {"cats", NOUN, "cat", 1, false},
        {".", PUNCT, ".", 0, false},
        {"A", DET, "a", 1, true},
        {"cat", NOUN, "cat", 1, false},
        {"sees", VERB, "see", 1, false},
        {"5", NUM, "5", 0, false},
        {"dogs", NOUN, "dog", 1, false},
        {",", PUNCT, ",", 0, false},
        {"3", NUM, "3", 0, false},
        {"birds", NOUN, "bird", 1, false},
        {"and", CCONJ, "and", 1, true},
        {"2", NUM, "2", 0, false},
        {"fish", NOUN, "fish", 1, false},
        {"!", PUNCT, "!", 0, false}},
       2,
       {EntityType::CARDINAL, EntityType::CARDINAL, EntityType::CARDINAL, EntityType::CARDINAL}},
  };
  return all;
}

// 26 named ranking features plus 14 document counts.
inline const std::vector<std::string>& fixture_feature_names() {
  static const std::vector<std::string> names = {
      "corrected_adjectives_variation",
      "root_adjectives_variation",
      "total_number_of_unique_adjectives",
      "simple_adjectives_variation",
      "average_number_of_adjectives_per_sent",
      "avg_num_of_named_entities_norp_per_word",
      "average_number_of_adjectives_per_word",
      "total_number_of_adjectives",
      "corrected_nouns_variation",
      "root_nouns_variation",
      "simple_type_token_ratio_no_lemma",
      "simple_type_token_ratio",
      "average_number_of_verbs_per_word",
      "bilogarithmic_type_token_ratio",
      "bilogarithmic_type_token_ratio_no_lemma",
      "average_number_of_syllables_per_word",
      "corrected_verbs_variation",
      "root_verbs_variation",
      "total_number_of_punctuations",
      "average_number_of_numerals_per_sentence",
      "total_number_of_named_entities",
      "simple_numerals_variation",
      "total_number_of_numerals",
      "total_number_of_unique_numerals",
      "root_numerals_variation",
      "corrected_numerals_variation",
      "total_number_of_tokens",
      "total_number_of_words",
      "total_number_of_unique_words",
      "total_number_of_unique_lemmas",
      "total_number_of_sentences",
      "total_number_of_characters",
      "total_number_of_syllables",
      "total_number_of_stop_words",
      "total_number_of_nouns",
      "total_number_of_unique_nouns",
      "total_number_of_verbs",
      "total_number_of_unique_verbs",
      "root_type_token_ratio",
      "corrected_type_token_ratio",
  };
  return names;
}

namespace detail {

inline std::string lower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

struct HandCounts {
  double tokens = 0, words = 0, sentences = 0, characters = 0, syllables = 0, stops = 0, entities = 0, norp = 0;
  std::map<Upos, double> pos;
  std::map<Upos, std::set<std::string>> pos_types;
  std::set<std::string> surfaces, lemmas;
};

inline HandCounts count(const Fixture& f) {
  HandCounts c;
  c.tokens = static_cast<double>(f.tokens.size());
  c.sentences = static_cast<double>(f.sentences);
  for (const auto& t : f.tokens) {
    c.pos[t.pos] += 1;
    c.pos_types[t.pos].insert(lower(t.surface));
    if (t.pos == Upos::PUNCT) continue;
    c.words += 1;
    c.characters += static_cast<double>(t.surface.size());
    c.syllables += t.syllables;
    c.stops += t.stop ? 1 : 0;
    c.surfaces.insert(lower(t.surface));
    c.lemmas.insert(lower(t.lemma));
  }
  c.entities = static_cast<double>(f.entities.size());
  for (auto e : f.entities) c.norp += e == EntityType::NORP ? 1 : 0;
  return c;
}

}  // namespace detail

// Expected value of every fixture feature for one fixture.
inline std::map<std::string, double> expected_features(const Fixture& f) {
  const auto c = detail::count(f);
  auto n = [&](Upos p) { return c.pos.count(p) ? c.pos.at(p) : 0.0; };
  auto u = [&](Upos p) { return c.pos_types.count(p) ? static_cast<double>(c.pos_types.at(p).size()) : 0.0; };
  auto simple = [](double uu, double nn) { return nn == 0 ? 0.0 : uu / nn; };
  auto root = [](double uu, double nn) { return nn == 0 ? 0.0 : uu / std::sqrt(nn); };
  auto corrected = [](double uu, double nn) { return nn == 0 ? 0.0 : uu / std::sqrt(2.0 * nn); };
  auto per = [](double a, double b) { return b == 0 ? 0.0 : a / b; };
  auto bilog = [](double t, double nn) { return nn <= 1 ? 0.0 : std::log(t) / std::log(nn); };
  const double types_surface = static_cast<double>(c.surfaces.size());
  const double types_lemma = static_cast<double>(c.lemmas.size());
  using enum Upos;
  return {
      {"corrected_adjectives_variation", corrected(u(ADJ), n(ADJ))},
      {"root_adjectives_variation", root(u(ADJ), n(ADJ))},
      {"total_number_of_unique_adjectives", u(ADJ)},
      {"simple_adjectives_variation", simple(u(ADJ), n(ADJ))},
      {"average_number_of_adjectives_per_sent", per(n(ADJ), c.sentences)},
      {"avg_num_of_named_entities_norp_per_word", per(c.norp, c.words)},
      {"average_number_of_adjectives_per_word", per(n(ADJ), c.words)},
      {"total_number_of_adjectives", n(ADJ)},
      {"corrected_nouns_variation", corrected(u(NOUN), n(NOUN))},
      {"root_nouns_variation", root(u(NOUN), n(NOUN))},
      {"simple_type_token_ratio_no_lemma", simple(types_surface, c.words)},
      {"simple_type_token_ratio", simple(types_lemma, c.words)},
      {"average_number_of_verbs_per_word", per(n(VERB), c.words)},
      {"bilogarithmic_type_token_ratio", bilog(types_lemma, c.words)},
      {"bilogarithmic_type_token_ratio_no_lemma", bilog(types_surface, c.words)},
      {"average_number_of_syllables_per_word", per(c.syllables, c.words)},
      {"corrected_verbs_variation", corrected(u(VERB), n(VERB))},
      {"root_verbs_variation", root(u(VERB), n(VERB))},
      {"total_number_of_punctuations", n(PUNCT)},
      {"average_number_of_numerals_per_sentence", per(n(NUM), c.sentences)},
      {"total_number_of_named_entities", c.entities},
      {"simple_numerals_variation", simple(u(NUM), n(NUM))},
      {"total_number_of_numerals", n(NUM)},
      {"total_number_of_unique_numerals", u(NUM)},
      {"root_numerals_variation", root(u(NUM), n(NUM))},
      {"corrected_numerals_variation", corrected(u(NUM), n(NUM))},
      {"total_number_of_tokens", c.tokens},
      {"total_number_of_words", c.words},
      {"total_number_of_unique_words", types_surface},
      {"total_number_of_unique_lemmas", types_lemma},
      {"total_number_of_sentences", c.sentences},
      {"total_number_of_characters", c.characters},
      {"total_number_of_syllables", c.syllables},
      {"total_number_of_stop_words", c.stops},
      {"total_number_of_nouns", n(NOUN)},
      {"total_number_of_unique_nouns", u(NOUN)},
      {"total_number_of_verbs", n(VERB)},
      {"total_number_of_unique_verbs", u(VERB)},
      {"root_type_token_ratio", root(types_lemma, c.words)},
      {"corrected_type_token_ratio", corrected(types_lemma, c.words)},
  };
}

}  // namespace stylo::testing
