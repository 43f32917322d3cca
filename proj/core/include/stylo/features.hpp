#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stylo/textpipe.hpp"

namespace stylo {

enum class FeatureFamily : std::uint8_t {
  raw_count, per_word_average, per_sentence_average, lexical_variation, type_token_ratio, entity, readability
};
std::string_view feature_family_name(FeatureFamily family);
std::optional<FeatureFamily> parse_feature_family(std::string_view name);

enum class VariationKind : std::uint8_t { simple, root, corrected };
enum class TtrKind : std::uint8_t { simple, bilogarithmic, root, corrected };
enum class AverageUnit : std::uint8_t { word, sentence };
enum class ReadabilityFormula : std::uint8_t {
  flesch_reading_ease, flesch_kincaid_grade, automated_readability_index, coleman_liau, gunning_fog, smog
};

struct FeatureSpec {
  std::string name;
  FeatureFamily family = FeatureFamily::raw_count;
  std::string formula;
};

// U/N, U/sqrt(N), U/sqrt(2N); 0 when N = 0. Throws ContractError if U > N.
double lexical_variation(VariationKind kind, std::size_t unique_count, std::size_t total_count);

// Over word tokens (non-PUNCT): types are distinct lowercased lemmas or
// surfaces. Bilogarithmic is ln T / ln N and 0 when N <= 1.
double type_token_ratio(TtrKind kind, bool use_lemma, const AnnotatedDocument& doc);

// count / words or count / sentences; 0 on a zero denominator.
double per_unit_average(double count, AverageUnit unit, const AnnotatedDocument& doc);

// Standard coefficients over words (non-PUNCT), sentences, syllables,
// characters (code points in words) and complex words (>= 3 syllables).
// 0 for a document without words or sentences.
double readability(ReadabilityFormula formula, const AnnotatedDocument& doc);

std::size_t word_count(const AnnotatedDocument& doc);

// The feature manifest compiled into evaluators.
//
// Manifest format (UTF-8 text):
//   STYLO-FEATURE-MANIFEST
//   version 1
//   count 220
//   <name>\t<family>\t<formula>          (one line per feature, '#' comments)
//
// Formulas: count(S), unique(C), unique_lemma(word), variation(K,C),
// per_word(S), per_sent(S), ttr(K,lemma|surface), readability(F), where C is
// a token category (pos:TAG, ent:TYPE, ent:ALL, word, stop, content,
// function, mono, poly, long, cap) and S is a category or one of tokens,
// sentences, characters, syllables.
class FeatureRegistry {
 public:
  static constexpr std::size_t kFeatureCount = 220;

  static const FeatureRegistry& builtin();
  static FeatureRegistry load(const std::string& path);
  static FeatureRegistry parse(std::string_view text);

  std::size_t size() const { return specs_.size(); }
  const std::vector<FeatureSpec>& specs() const { return specs_; }
  std::vector<std::string> names() const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  // Fingerprint of the manifest contents; matrices extracted with different
  // registries are not comparable.
  const std::string& version() const { return version_; }

  std::vector<double> extract(const AnnotatedDocument& doc) const;

  struct Formula {
    std::uint8_t op = 0;
    std::uint8_t selector = 0;
    std::uint8_t index = 0;
    std::uint8_t kind = 0;
  };

 private:
  std::vector<FeatureSpec> specs_;
  std::vector<Formula> formulas_;
  std::unordered_map<std::string, std::size_t> index_;
  std::string version_;
};

// extract() with the built-in registry.
std::vector<double> extract_all(const AnnotatedDocument& doc);

}  // namespace stylo
