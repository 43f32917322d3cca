#pragma once

#include <set>
#include <string>
#include <string_view>

#include "stylo/entities.hpp"
#include "stylo/lemmatizer.hpp"
#include "stylo/tagger.hpp"
#include "stylo/textpipe.hpp"

namespace stylo {

// Lowercase stopword set.
// File format: "STYLO-STOPWORDS", "version 1", then one word per line.
class StopwordList {
 public:
  static const StopwordList& builtin();
  static StopwordList load(const std::string& path);
  static StopwordList parse(std::string_view text);

  bool contains(std::string_view lowercase_word) const { return words_.contains(lowercase_word); }
  std::size_t size() const { return words_.size(); }

 private:
  std::set<std::string, std::less<>> words_;
};

// Full annotation stack: tokenize, syllables, sentences, POS, lemmas,
// stopwords, entities. Holds references; the models must outlive it.
class Annotator {
 public:
  Annotator(const TaggerModel& tagger, const Lemmatizer& lemmatizer, const Gazetteer& gazetteer,
            const StopwordList& stopwords)
      : tagger_(tagger), lemmatizer_(lemmatizer), gazetteer_(gazetteer), stopwords_(stopwords) {}

  static const Annotator& builtin();

  AnnotatedDocument annotate(std::string_view source) const;

 private:
  const TaggerModel& tagger_;
  const Lemmatizer& lemmatizer_;
  const Gazetteer& gazetteer_;
  const StopwordList& stopwords_;
};

// Shorthand for Annotator::builtin().annotate(source).
AnnotatedDocument annotate(std::string_view source);

}  // namespace stylo
