#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "stylo/textpipe.hpp"

namespace stylo {

// Rule-based English lemmatizer: exception lexicon first ("was" -> "be"),
// then suffix rules by POS, else the lowercased surface.
//
//   NOUN  -ies -> -y, -es after sibilants, -s
//   VERB  -ies -> -y, -es, -s, -ing, -ed (with e-restoration and undoubling)
//   ADJ   -ier/-iest -> -y, -er, -est (unknown adjectives only)
//
// Exception file format: "STYLO-LEMMAS", "version 1", then "POS\tform\tlemma".
class Lemmatizer {
 public:
  static const Lemmatizer& builtin();
  static Lemmatizer parse(std::string_view exceptions_text, std::string_view lexicon_text);
  static Lemmatizer load(const std::string& exceptions_path, const std::string& lexicon_path);

  std::string lemmatize(std::string_view surface, Upos pos) const;

 private:
  bool known(const std::string& word, Upos pos) const;
  std::string repair(const std::string& stem, Upos pos) const;

  std::map<std::pair<Upos, std::string>, std::string> exceptions_;
  std::set<std::pair<Upos, std::string>> known_;
};

// Lemma of an already-tagged token using the built-in tables.
std::string lemmatize(const Token& token);

}  // namespace stylo
