#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stylo/textpipe.hpp"

namespace stylo {

// Averaged-perceptron POS tagger backed by a word -> tag lexicon.
//
// A model without weights is the lexicon fallback: known words take their
// lexicon tag, unknown words are guessed from capitalization and suffixes.
// Trained models score contextual features (neighbouring words, previous
// tags, affixes, word shape and the lexicon tag itself) and defer to the
// fallback when no feature fires. Punctuation, symbol and numeric tokens are
// always tagged PUNCT, SYM and NUM.
//
// Persistence format (UTF-8 text):
//   STYLO-TAGGER
//   version 1
//   lexicon <n>
//   <word>\t<TAG>                       (n lines)
//   weights <m>
//   <feature>\t<TAG>\t<weight>          (m lines, sorted)
class TaggerModel {
 public:
  using Weights = std::array<double, kUposCount>;

  TaggerModel() = default;

  static const TaggerModel& builtin();
  static TaggerModel load(const std::string& path);
  static TaggerModel parse(std::string_view text);

  std::string serialize() const;
  void save(const std::string& path) const;

  std::vector<Upos> tag_sentence(std::span<const std::string> words) const;

  std::optional<Upos> lexicon_tag(std::string_view word) const;
  Upos fallback_tag(std::string_view word, bool sentence_initial) const;

  bool has_weights() const { return !weights_.empty(); }
  std::size_t lexicon_size() const { return lexicon_.size(); }
  std::size_t weight_count() const;

 private:
  friend class TaggerTrainer;

  std::unordered_map<std::string, Upos> lexicon_;
  std::unordered_map<std::string, Weights> weights_;
};

// Tags each sentence of the document in place.
void pos_tag(AnnotatedDocument& doc, const TaggerModel& model);

// Forced tags for punctuation / symbol / numeric tokens.
std::optional<Upos> forced_tag(std::string_view surface);

struct TaggedSentence {
  std::vector<std::string> words;
  std::vector<Upos> tags;
};

// Parses "surface<TAB>TAG" lines with blank lines between sentences.
// Malformed lines raise ParseError with the line number; unknown tags raise
// ValidationError.
std::vector<TaggedSentence> parse_tagged_corpus(std::string_view text);

struct TaggerTrainingOptions {
  int epochs = 5;
  std::uint64_t seed = 0;
  // Fraction of sentences (after a seeded shuffle) held out for evaluation.
  double holdout_fraction = 0.1;
};

struct TaggerTrainingResult {
  TaggerModel model;
  std::size_t train_sentences = 0;
  std::size_t holdout_sentences = 0;
  // Token accuracy on the held-out sentences; empty when none were held out.
  std::optional<double> holdout_accuracy;
};

// Trains on top of `base` (whose lexicon is kept). Deterministic given the
// sentences, options and base model.
TaggerTrainingResult train_tagger(std::span<const TaggedSentence> sentences, const TaggerTrainingOptions& options,
                                  const TaggerModel& base = TaggerModel::builtin());
TaggerTrainingResult train_tagger_file(const std::string& path, const TaggerTrainingOptions& options,
                                       const TaggerModel& base = TaggerModel::builtin());

double tagging_accuracy(const TaggerModel& model, std::span<const TaggedSentence> sentences);

}  // namespace stylo
