#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace stylo::resources {

// Names of the data files compiled into the library.
inline constexpr std::string_view kFeatureManifest = "features.manifest";
inline constexpr std::string_view kTaggerLexicon = "tagger_lexicon.model";
inline constexpr std::string_view kLemmaExceptions = "lemma_exceptions.tsv";
inline constexpr std::string_view kStopwords = "stopwords.txt";
inline constexpr std::string_view kGazetteer = "gazetteer.txt";

// Contents of a bundled data file; throws IoError for unknown names.
std::string_view embedded(std::string_view name);
std::vector<std::string_view> embedded_names();

// Checks the "<MAGIC>\nversion <n>" preamble shared by all bundled text
// formats and returns the remaining lines with their 1-based line numbers.
struct VersionedLine {
  std::size_t number;
  std::string text;
};
std::vector<VersionedLine> read_versioned(std::string_view text, std::string_view magic, int supported_version);

}  // namespace stylo::resources
