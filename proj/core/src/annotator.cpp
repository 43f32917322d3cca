#include "stylo/annotator.hpp"

#include "stylo/resources.hpp"
#include "stylo/util.hpp"

namespace stylo {

const StopwordList& StopwordList::builtin() {
  static const StopwordList list = parse(resources::embedded(resources::kStopwords));
  return list;
}

StopwordList StopwordList::load(const std::string& path) { return parse(read_file(path)); }

StopwordList StopwordList::parse(std::string_view text) {
  StopwordList out;
  for (const auto& line : resources::read_versioned(text, "STYLO-STOPWORDS", 1)) {
    if (!line.text.empty()) out.words_.insert(to_lower_ascii(line.text));
  }
  return out;
}

const Annotator& Annotator::builtin() {
  static const Annotator annotator(TaggerModel::builtin(), Lemmatizer::builtin(), Gazetteer::builtin(),
                                   StopwordList::builtin());
  return annotator;
}

AnnotatedDocument Annotator::annotate(std::string_view source) const {
  AnnotatedDocument doc;
  doc.source = std::string(source);
  doc.tokens = tokenize(source);
  for (auto& token : doc.tokens) token.syllable_count = count_syllables(token.surface);
  doc.sentences = split_sentences(doc.tokens);
  pos_tag(doc, tagger_);
  for (auto& token : doc.tokens) {
    token.lemma = lemmatizer_.lemmatize(token.surface, token.pos);
    if (token.lemma.empty()) token.lemma = token.surface;
    token.is_stopword = stopwords_.contains(to_lower_ascii(token.surface));
  }
  doc.entities = detect_entities(doc, gazetteer_);
  return doc;
}

AnnotatedDocument annotate(std::string_view source) { return Annotator::builtin().annotate(source); }

}  // namespace stylo
