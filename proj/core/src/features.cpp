#include "stylo/features.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <set>

#include "stylo/error.hpp"
#include "stylo/resources.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

constexpr std::array<std::string_view, 7> kFamilyNames = {
    "raw_count", "per_word_average", "per_sentence_average", "lexical_variation",
    "type_token_ratio", "entity", "readability"};

enum Op : std::uint8_t { op_count, op_unique, op_unique_lemma, op_variation, op_per_word, op_per_sent, op_ttr,
                         op_readability };

// Slots of the per-document statistics table. The first kCategorySlots are
// token categories that also track distinct values.
constexpr std::size_t kEntSlot = kUposCount;
constexpr std::size_t kEntAllSlot = kEntSlot + kEntityTypeCount;
constexpr std::size_t kWordSlot = kEntAllSlot + 1;
constexpr std::size_t kStopSlot = kWordSlot + 1;
constexpr std::size_t kContentSlot = kStopSlot + 1;
constexpr std::size_t kFunctionSlot = kContentSlot + 1;
constexpr std::size_t kMonoSlot = kFunctionSlot + 1;
constexpr std::size_t kPolySlot = kMonoSlot + 1;
constexpr std::size_t kLongSlot = kPolySlot + 1;
constexpr std::size_t kCapSlot = kLongSlot + 1;
constexpr std::size_t kCategorySlots = kCapSlot + 1;
constexpr std::size_t kTokensSlot = kCategorySlots;
constexpr std::size_t kSentencesSlot = kTokensSlot + 1;
constexpr std::size_t kCharactersSlot = kSentencesSlot + 1;
constexpr std::size_t kSyllablesSlot = kCharactersSlot + 1;
constexpr std::size_t kSlotCount = kSyllablesSlot + 1;

constexpr std::size_t kLongWordLength = 7;

std::optional<std::size_t> parse_slot(std::string_view s, bool categories_only) {
  if (s.starts_with("pos:")) {
    if (auto tag = parse_upos(s.substr(4))) return static_cast<std::size_t>(*tag);
    return std::nullopt;
  }
  if (s == "ent:ALL") return kEntAllSlot;
  if (s.starts_with("ent:")) {
    if (auto type = parse_entity_type(s.substr(4))) return kEntSlot + static_cast<std::size_t>(*type);
    return std::nullopt;
  }
  static const std::array<std::pair<std::string_view, std::size_t>, 12> named = {{
      {"word", kWordSlot}, {"stop", kStopSlot}, {"content", kContentSlot}, {"function", kFunctionSlot},
      {"mono", kMonoSlot}, {"poly", kPolySlot}, {"long", kLongSlot}, {"cap", kCapSlot},
      {"tokens", kTokensSlot}, {"sentences", kSentencesSlot}, {"characters", kCharactersSlot},
      {"syllables", kSyllablesSlot}}};
  for (const auto& [name, slot] : named) {
    if (s == name) {
      if (categories_only && slot >= kCategorySlots) return std::nullopt;
      return slot;
    }
  }
  return std::nullopt;
}

template <class Enum, std::size_t N>
std::optional<Enum> parse_kind(std::string_view s, const std::array<std::string_view, N>& names) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

constexpr std::array<std::string_view, 3> kVariationNames = {"simple", "root", "corrected"};
constexpr std::array<std::string_view, 4> kTtrNames = {"simple", "bilogarithmic", "root", "corrected"};
constexpr std::array<std::string_view, 6> kReadabilityNames = {
    "flesch_reading_ease", "flesch_kincaid_grade", "automated_readability_index", "coleman_liau", "gunning_fog",
    "smog"};

FeatureRegistry::Formula compile(std::string_view formula, std::size_t line) {
  const auto open = formula.find('(');
  if (open == std::string_view::npos || formula.back() != ')') throw ParseError("malformed formula", line);
  const std::string_view op = formula.substr(0, open);
  const std::string_view args = formula.substr(open + 1, formula.size() - open - 2);
  const auto comma = args.find(',');
  const std::string_view first = args.substr(0, comma);
  const std::string_view second = comma == std::string_view::npos ? std::string_view() : args.substr(comma + 1);

  FeatureRegistry::Formula f;
  auto slot = [&](std::string_view s, bool categories_only) {
    const auto v = parse_slot(s, categories_only);
    if (!v) throw ParseError("unknown selector '" + std::string(s) + "'", line);
    return static_cast<std::uint8_t>(*v);
  };
  auto kind = [&](auto parsed) {
    if (!parsed) throw ParseError("unknown formula kind in '" + std::string(formula) + "'", line);
    return static_cast<std::uint8_t>(*parsed);
  };
  if (op == "count" || op == "per_word" || op == "per_sent") {
    f.op = op == "count" ? op_count : op == "per_word" ? op_per_word : op_per_sent;
    f.selector = slot(args, false);
  } else if (op == "unique") {
    f.op = op_unique;
    f.selector = slot(args, true);
  } else if (op == "unique_lemma") {
    f.op = op_unique_lemma;
    if (args != "word") throw ParseError("unique_lemma only supports 'word'", line);
  } else if (op == "variation") {
    f.op = op_variation;
    f.kind = kind(parse_kind<VariationKind>(first, kVariationNames));
    f.selector = slot(second, true);
  } else if (op == "ttr") {
    f.op = op_ttr;
    f.kind = kind(parse_kind<TtrKind>(first, kTtrNames));
    if (second != "lemma" && second != "surface") throw ParseError("ttr expects lemma or surface", line);
    f.index = second == "lemma" ? 1 : 0;
  } else if (op == "readability") {
    f.op = op_readability;
    f.kind = kind(parse_kind<ReadabilityFormula>(args, kReadabilityNames));
  } else {
    throw ParseError("unknown formula operator '" + std::string(op) + "'", line);
  }
  return f;
}

bool is_word(const Token& t) { return t.pos != Upos::PUNCT; }

bool is_content(Upos pos) {
  return pos == Upos::NOUN || pos == Upos::VERB || pos == Upos::ADJ || pos == Upos::ADV || pos == Upos::PROPN;
}

// Counts and distinct values for every slot, computed once per document.
struct DocStats {
  std::array<double, kSlotCount> count{};
  std::array<std::set<std::string>, kCategorySlots> distinct;
  std::set<std::string> lemmas;
  std::size_t complex_words = 0;

  explicit DocStats(const AnnotatedDocument& doc) {
    count[kTokensSlot] = static_cast<double>(doc.tokens.size());
    count[kSentencesSlot] = static_cast<double>(doc.sentences.size());
    for (const Token& t : doc.tokens) {
      const std::string lower = to_lower_ascii(t.surface);
      add(static_cast<std::size_t>(t.pos), lower);
      if (!is_word(t)) continue;
      add(kWordSlot, lower);
      lemmas.insert(to_lower_ascii(t.lemma));
      if (t.is_stopword) add(kStopSlot, lower);
      add(is_content(t.pos) ? kContentSlot : kFunctionSlot, lower);
      if (t.syllable_count == 1) add(kMonoSlot, lower);
      if (t.syllable_count >= 3) add(kPolySlot, lower);
      if (utf8_length(t.surface) >= kLongWordLength) add(kLongSlot, lower);
      if (!t.surface.empty() && t.surface.front() >= 'A' && t.surface.front() <= 'Z') add(kCapSlot, lower);
      count[kCharactersSlot] += static_cast<double>(utf8_length(t.surface));
      count[kSyllablesSlot] += t.syllable_count;
    }
    for (const EntitySpan& e : doc.entities) {
      std::string text;
      for (std::size_t i = e.tokens.begin; i < e.tokens.end; ++i) {
        if (i > e.tokens.begin) text += ' ';
        text += to_lower_ascii(doc.tokens[i].surface);
      }
      add(kEntSlot + static_cast<std::size_t>(e.type), text);
      add(kEntAllSlot, text);
    }
    complex_words = static_cast<std::size_t>(count[kPolySlot]);
  }

  void add(std::size_t slot, const std::string& value) {
    count[slot] += 1;
    distinct[slot].insert(value);
  }

  double words() const { return count[kWordSlot]; }
  double sentences() const { return count[kSentencesSlot]; }
};

double ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

double ttr_value(TtrKind kind, double types, double n) {
  if (n <= 0) return 0.0;
  switch (kind) {
    case TtrKind::simple: return types / n;
    case TtrKind::bilogarithmic: return n <= 1 ? 0.0 : std::log(types) / std::log(n);
    case TtrKind::root: return types / std::sqrt(n);
    case TtrKind::corrected: return types / std::sqrt(2.0 * n);
  }
  return 0.0;
}

double readability_value(ReadabilityFormula formula, const DocStats& s) {
  const double w = s.words();
  const double n = s.sentences();
  if (w <= 0 || n <= 0) return 0.0;
  const double syllables = s.count[kSyllablesSlot];
  const double chars = s.count[kCharactersSlot];
  const double complex = static_cast<double>(s.complex_words);
  switch (formula) {
    case ReadabilityFormula::flesch_reading_ease: return 206.835 - 1.015 * (w / n) - 84.6 * (syllables / w);
    case ReadabilityFormula::flesch_kincaid_grade: return 0.39 * (w / n) + 11.8 * (syllables / w) - 15.59;
    case ReadabilityFormula::automated_readability_index: return 4.71 * (chars / w) + 0.5 * (w / n) - 21.43;
    case ReadabilityFormula::coleman_liau: {
      const double letters_per_100 = chars / w * 100.0;
      const double sentences_per_100 = n / w * 100.0;
      return 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8;
    }
    case ReadabilityFormula::gunning_fog: return 0.4 * (w / n + 100.0 * complex / w);
    case ReadabilityFormula::smog: return 1.0430 * std::sqrt(complex * 30.0 / n) + 3.1291;
  }
  return 0.0;
}

std::string fingerprint(const std::vector<FeatureSpec>& specs) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& spec : specs) {
    mix(spec.name);
    mix("\t");
    mix(feature_family_name(spec.family));
    mix("\t");
    mix(spec.formula);
    mix("\n");
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "1-%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::string_view feature_family_name(FeatureFamily family) { return kFamilyNames[static_cast<std::size_t>(family)]; }

std::optional<FeatureFamily> parse_feature_family(std::string_view name) {
  return parse_kind<FeatureFamily>(name, kFamilyNames);
}

double lexical_variation(VariationKind kind, std::size_t unique_count, std::size_t total_count) {
  if (unique_count > total_count) {
    throw ContractError("lexical_variation: unique count " + std::to_string(unique_count) +
                        " exceeds total count " + std::to_string(total_count));
  }
  if (total_count == 0) return 0.0;
  const double u = static_cast<double>(unique_count);
  const double n = static_cast<double>(total_count);
  switch (kind) {
    case VariationKind::simple: return u / n;
    case VariationKind::root: return u / std::sqrt(n);
    case VariationKind::corrected: return u / std::sqrt(2.0 * n);
  }
  return 0.0;
}

double type_token_ratio(TtrKind kind, bool use_lemma, const AnnotatedDocument& doc) {
  const DocStats stats(doc);
  const double types = static_cast<double>(use_lemma ? stats.lemmas.size() : stats.distinct[kWordSlot].size());
  return ttr_value(kind, types, stats.words());
}

std::size_t word_count(const AnnotatedDocument& doc) {
  std::size_t n = 0;
  for (const Token& t : doc.tokens) n += is_word(t) ? 1 : 0;
  return n;
}

double per_unit_average(double count, AverageUnit unit, const AnnotatedDocument& doc) {
  const double den = unit == AverageUnit::word ? static_cast<double>(word_count(doc))
                                               : static_cast<double>(doc.sentences.size());
  return ratio(count, den);
}

double readability(ReadabilityFormula formula, const AnnotatedDocument& doc) {
  return readability_value(formula, DocStats(doc));
}

const FeatureRegistry& FeatureRegistry::builtin() {
  static const FeatureRegistry registry = parse(resources::embedded(resources::kFeatureManifest));
  return registry;
}

FeatureRegistry FeatureRegistry::load(const std::string& path) { return parse(read_file(path)); }

FeatureRegistry FeatureRegistry::parse(std::string_view text) {
  const auto lines = resources::read_versioned(text, "STYLO-FEATURE-MANIFEST", 1);
  FeatureRegistry out;
  std::optional<std::size_t> declared;
  for (const auto& line : lines) {
    if (line.text.empty() || line.text.front() == '#') continue;
    if (!declared) {
      if (!line.text.starts_with("count ")) throw ParseError("expected 'count <n>'", line.number);
      try {
        declared = static_cast<std::size_t>(std::stoul(line.text.substr(6)));
      } catch (const std::exception&) {
        throw ParseError("bad feature count", line.number);
      }
      continue;
    }
    const auto t1 = line.text.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.text.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw ParseError("expected 'name<TAB>family<TAB>formula'", line.number);
    FeatureSpec spec;
    spec.name = line.text.substr(0, t1);
    const auto family = parse_feature_family(std::string_view(line.text).substr(t1 + 1, t2 - t1 - 1));
    if (!family) throw ParseError("unknown feature family", line.number);
    spec.family = *family;
    spec.formula = line.text.substr(t2 + 1);
    if (out.index_.contains(spec.name)) throw ValidationError("duplicate feature name '" + spec.name + "'");
    out.formulas_.push_back(compile(spec.formula, line.number));
    out.index_.emplace(spec.name, out.specs_.size());
    out.specs_.push_back(std::move(spec));
  }
  if (!declared) throw ParseError("missing 'count' line", 3);
  if (*declared != out.specs_.size()) {
    throw ValidationError("manifest declares " + std::to_string(*declared) + " features but lists " +
                          std::to_string(out.specs_.size()));
  }
  if (out.specs_.size() != kFeatureCount) {
    throw ValidationError("manifest must define exactly " + std::to_string(kFeatureCount) + " features, found " +
                          std::to_string(out.specs_.size()));
  }
  out.version_ = fingerprint(out.specs_);
  return out;
}

std::vector<std::string> FeatureRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(specs_.size());
  for (const auto& spec : specs_) out.push_back(spec.name);
  return out;
}

std::optional<std::size_t> FeatureRegistry::index_of(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<double> FeatureRegistry::extract(const AnnotatedDocument& doc) const {
  const DocStats s(doc);
  std::vector<double> values(formulas_.size(), 0.0);
  for (std::size_t i = 0; i < formulas_.size(); ++i) {
    const Formula& f = formulas_[i];
    double v = 0.0;
    switch (f.op) {
      case op_count: v = s.count[f.selector]; break;
      case op_unique: v = static_cast<double>(s.distinct[f.selector].size()); break;
      case op_unique_lemma: v = static_cast<double>(s.lemmas.size()); break;
      case op_variation:
        v = lexical_variation(static_cast<VariationKind>(f.kind), s.distinct[f.selector].size(),
                              static_cast<std::size_t>(s.count[f.selector]));
        break;
      case op_per_word: v = ratio(s.count[f.selector], s.words()); break;
      case op_per_sent: v = ratio(s.count[f.selector], s.sentences()); break;
      case op_ttr: {
        const double types = static_cast<double>(f.index ? s.lemmas.size() : s.distinct[kWordSlot].size());
        v = ttr_value(static_cast<TtrKind>(f.kind), types, s.words());
        break;
      }
      case op_readability: v = readability_value(static_cast<ReadabilityFormula>(f.kind), s); break;
      default: break;
    }
    values[i] = std::isfinite(v) ? v : 0.0;
  }
  return values;
}

std::vector<double> extract_all(const AnnotatedDocument& doc) { return FeatureRegistry::builtin().extract(doc); }

}  // namespace stylo
