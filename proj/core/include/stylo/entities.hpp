#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/textpipe.hpp"

namespace stylo {

// Phrase -> entity type lists. Matching is case-sensitive on the
// space-joined token surfaces; the first listing of a phrase wins.
//
// File format: "STYLO-GAZETTEER", "version 1", then "TYPE\tphrase" lines.
class Gazetteer {
 public:
  static const Gazetteer& builtin();
  static Gazetteer load(const std::string& path);
  static Gazetteer parse(std::string_view text);

  void add(EntityType type, std::string phrase);
  std::optional<EntityType> lookup(std::string_view phrase) const;
  std::size_t size() const { return entries_.size(); }
  std::size_t count(EntityType type) const;

 private:
  std::map<std::string, EntityType, std::less<>> entries_;
};

// Pattern rules run first, in this order: MONEY (currency symbol + number),
// PERCENT (number + "%"/"percent"), TIME (h:mm, number + am/pm or a
// duration unit), DATE (month names, 4-digit years, number + day/week/month/
// year units), QUANTITY (number + measurement unit), ORDINAL, then CARDINAL
// for remaining runs of NUM tokens. Maximal runs of capitalized tokens that
// are not sentence-initial (or are, but appear in the gazetteer) become
// entities typed by gazetteer membership, else OTHER. Requires POS tags.
std::vector<EntitySpan> detect_entities(const AnnotatedDocument& doc, const Gazetteer& gazetteer);

}  // namespace stylo
