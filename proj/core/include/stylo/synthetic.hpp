#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stylo/corpus.hpp"

namespace stylo {

// Seeded generator of labelled template responses with a controllable
// stylistic signal. Every response has three ten-token sentences:
//
//   Q M NOUN VERB Q M NOUN PREP Q NOUN .
//
// where each quantifier slot Q holds a two-digit numeral or a determiner and
// each modifier slot M an adjective or a noun modifier. All words are
// four-letter, one-syllable entries of the bundled tagger lexicon, so the
// built-in annotator tags them exactly and length-driven features (characters,
// syllables, readability) vary only through the quantifier slots.
//
// Latent per-response quantities, each drawn as mean + shift + noise with
// noise ~ N(0, noise_fraction * sd):
//   numerals        mean numeral_mean, sd numeral_sd, label-0 shift
//                   numeral_shift * numeral_sd (capped by the 9 Q slots)
//   word reuse      probability that a content slot repeats a word already
//                   used in the response (lower lexical variation); label-0
//                   shift reuse_shift * reuse_sd
//   adjectives      mean adjective_mean + group_adjective_shift[g], sd
//                   adjective_sd (no label dependence)
// With inverted polarity the shifts go to label 1 instead.
struct SyntheticConfig {
  std::vector<std::string> groups = {"ada", "babbage", "curie", "davinci"};
  std::vector<double> group_adjective_shift = {0.0, 0.5, 1.0, 1.5};
  std::size_t responses_per_group = 800;
  std::string dataset = "synthetic";
  std::uint64_t seed = 0;
  double positive_rate = 0.5;

  double numeral_mean = 2.0;
  double numeral_sd = 1.5;
  double numeral_shift = 2.0;
  double reuse_mean = 0.15;
  double reuse_sd = 0.15;
  double reuse_shift = 1.0;
  double adjective_mean = 2.0;
  double adjective_sd = 0.75;
  double noise_fraction = 0.5;
  bool inverted = false;
};

// Question ids are q0, q1, ... and shared across groups. Truth scores are
// uniform in [0.5, 1] for label 1 and in [0, 0.5) for label 0.
Corpus generate_synthetic(const SyntheticConfig& config);

// The generator's word pools, exposed for tests.
struct SyntheticVocabulary {
  std::vector<std::string> nouns, verbs, adjectives, prepositions, determiners;
};
const SyntheticVocabulary& synthetic_vocabulary();

}  // namespace stylo
