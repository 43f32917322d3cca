#include "stylo/entities.hpp"

#include <algorithm>
#include <set>

#include "stylo/error.hpp"
#include "stylo/resources.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

using WordSet = std::set<std::string, std::less<>>;

const WordSet kCurrency = {"$", "\xE2\x82\xAC", "\xC2\xA3", "\xC2\xA5"};
const WordSet kPercent = {"%", "percent"};
const WordSet kClockSuffix = {"am", "pm", "a.m", "p.m", "a.m.", "p.m.", "o'clock"};
const WordSet kTimeUnits = {"second", "seconds", "minute", "minutes", "hour", "hours"};
const WordSet kDateUnits = {"day", "days", "week", "weeks", "month", "months", "year", "years",
                            "decade", "decades", "century", "centuries"};
const WordSet kQuantityUnits = {"km", "kilometers", "kilometres", "mile", "miles", "meter", "meters", "metre",
                                "metres", "foot", "feet", "inch", "inches", "cm", "mm", "kg", "kilograms",
                                "gram", "grams", "pound", "pounds", "lbs", "ton", "tons", "tonnes", "liter",
                                "liters", "litre", "litres", "gallon", "gallons", "degree", "degrees", "acre",
                                "acres", "mph"};
const WordSet kOrdinals = {"first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth",
                           "ninth", "tenth", "eleventh", "twelfth", "twentieth", "hundredth", "thousandth"};
const WordSet kMonths = {"January", "February", "March", "April", "May", "June", "July",
                         "August", "September", "October", "November", "December"};

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_year(std::string_view s) {
  return s.size() == 4 && std::all_of(s.begin(), s.end(), is_digit) && (s[0] == '1' || s[0] == '2');
}

bool is_digit_ordinal(std::string_view s) {
  if (s.size() < 3 || !is_digit(s.front())) return false;
  const std::string tail = to_lower_ascii(s.substr(s.size() - 2));
  if (tail != "st" && tail != "nd" && tail != "rd" && tail != "th") return false;
  return std::all_of(s.begin(), s.end() - 2, is_digit);
}

bool capitalized(const Token& t) {
  if (t.surface.empty() || t.surface.front() < 'A' || t.surface.front() > 'Z') return false;
  return t.pos != Upos::PUNCT && t.pos != Upos::NUM && t.pos != Upos::SYM && t.pos != Upos::PRON;
}

class SentenceScanner {
 public:
  SentenceScanner(const AnnotatedDocument& doc, TokenRange sentence, const Gazetteer& gazetteer,
                  std::vector<EntitySpan>& out)
      : tokens_(doc.tokens), sentence_(sentence), gazetteer_(gazetteer), out_(out) {}

  void run() {
    std::size_t i = sentence_.begin;
    while (i < sentence_.end) {
      if (const std::size_t end = match_pattern(i); end > i) {
        i = end;
        continue;
      }
      if (const std::size_t end = match_capitalized(i); end > i) {
        i = end;
        continue;
      }
      ++i;
    }
  }

 private:
  std::string lower(std::size_t i) const { return to_lower_ascii(tokens_[i].surface); }
  bool in_range(std::size_t i) const { return i < sentence_.end; }
  bool is_num(std::size_t i) const { return in_range(i) && tokens_[i].pos == Upos::NUM; }

  std::size_t emit(std::size_t begin, std::size_t end, EntityType type) {
    out_.push_back({{begin, end}, type});
    return end;
  }

  bool is_month_at(std::size_t i) const {
    const std::string& s = tokens_[i].surface;
    if (!kMonths.contains(s)) return false;
    return s != "May" || is_num(i + 1);
  }

  std::size_t match_pattern(std::size_t i) {
    const Token& t = tokens_[i];
    if (kCurrency.contains(t.surface) && is_num(i + 1)) {
      std::size_t end = i + 1;
      while (is_num(end)) ++end;
      return emit(i, end, EntityType::MONEY);
    }
    if (t.pos == Upos::NUM) {
      std::size_t j = i;
      while (is_num(j)) ++j;
      const std::string next = in_range(j) ? lower(j) : std::string();
      if (kPercent.contains(next)) return emit(i, j + 1, EntityType::PERCENT);
      if (j == i + 1 && next == ":" && in_range(j + 1) && tokens_[j + 1].surface.size() == 2 &&
          std::all_of(tokens_[j + 1].surface.begin(), tokens_[j + 1].surface.end(), is_digit)) {
        return emit(i, j + 2, EntityType::TIME);
      }
      if (kClockSuffix.contains(next) || kTimeUnits.contains(next)) return emit(i, j + 1, EntityType::TIME);
      if (kDateUnits.contains(next)) return emit(i, j + 1, EntityType::DATE);
      if (j == i + 1 && is_year(t.surface)) return emit(i, j, EntityType::DATE);
      if (kQuantityUnits.contains(next)) return emit(i, j + 1, EntityType::QUANTITY);
      return emit(i, j, EntityType::CARDINAL);
    }
    if (kOrdinals.contains(lower(i)) || is_digit_ordinal(t.surface)) return emit(i, i + 1, EntityType::ORDINAL);
    if (is_month_at(i)) {
      std::size_t end = i + 1;
      if (is_num(end) && !is_year(tokens_[end].surface)) ++end;
      if (in_range(end + 1) && tokens_[end].surface == "," && is_year(tokens_[end + 1].surface)) {
        end += 2;
      } else if (in_range(end) && is_year(tokens_[end].surface)) {
        ++end;
      }
      return emit(i, end, EntityType::DATE);
    }
    return i;
  }

  bool sentence_initial(std::size_t i) const {
    for (std::size_t k = sentence_.begin; k < i; ++k) {
      if (tokens_[k].pos != Upos::PUNCT) return false;
    }
    return true;
  }

  std::string phrase(std::size_t begin, std::size_t end) const {
    std::string p;
    for (std::size_t k = begin; k < end; ++k) {
      if (k > begin) p += ' ';
      p += tokens_[k].surface;
    }
    return p;
  }

  std::size_t match_capitalized(std::size_t i) {
    if (!capitalized(tokens_[i])) return i;
    std::size_t end = i;
    while (in_range(end) && capitalized(tokens_[end]) && !is_month_at(end)) ++end;
    if (end == i) return i;
    const auto whole = gazetteer_.lookup(phrase(i, end));
    const auto first = gazetteer_.lookup(tokens_[i].surface);
    if (sentence_initial(i) && !whole && !first) return i;
    EntityType type = EntityType::OTHER;
    if (whole) {
      type = *whole;
    } else if (end - i > 1) {
      const auto last = gazetteer_.lookup(tokens_[end - 1].surface);
      if (first == EntityType::PERSON || last == EntityType::PERSON) type = EntityType::PERSON;
    }
    return emit(i, end, type);
  }

  const std::vector<Token>& tokens_;
  TokenRange sentence_;
  const Gazetteer& gazetteer_;
  std::vector<EntitySpan>& out_;
};

}  // namespace

const Gazetteer& Gazetteer::builtin() {
  static const Gazetteer gazetteer = parse(resources::embedded(resources::kGazetteer));
  return gazetteer;
}

Gazetteer Gazetteer::load(const std::string& path) { return parse(read_file(path)); }

Gazetteer Gazetteer::parse(std::string_view text) {
  Gazetteer out;
  for (const auto& line : resources::read_versioned(text, "STYLO-GAZETTEER", 1)) {
    if (line.text.empty() || line.text.front() == '#') continue;
    const auto tab = line.text.find('\t');
    if (tab == std::string::npos || tab + 1 == line.text.size()) {
      throw ParseError("expected 'TYPE<TAB>phrase'", line.number);
    }
    const auto type = parse_entity_type(std::string_view(line.text).substr(0, tab));
    if (!type) throw ParseError("unknown entity type", line.number);
    out.add(*type, line.text.substr(tab + 1));
  }
  return out;
}

void Gazetteer::add(EntityType type, std::string phrase) { entries_.emplace(std::move(phrase), type); }

std::optional<EntityType> Gazetteer::lookup(std::string_view phrase) const {
  const auto it = entries_.find(phrase);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::size_t Gazetteer::count(EntityType type) const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.second == type; }));
}

std::vector<EntitySpan> detect_entities(const AnnotatedDocument& doc, const Gazetteer& gazetteer) {
  std::vector<EntitySpan> spans;
  for (const auto& sentence : doc.sentences) SentenceScanner(doc, sentence, gazetteer, spans).run();
  return spans;
}

}  // namespace stylo
