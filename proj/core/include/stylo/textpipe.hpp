#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

// Universal POS tag set.
enum class Upos : std::uint8_t {
  ADJ, ADP, ADV, AUX, CCONJ, DET, INTJ, NOUN, NUM, PART, PRON, PROPN, PUNCT, SCONJ, SYM, VERB, X
};
inline constexpr std::size_t kUposCount = 17;

std::string_view upos_name(Upos tag);
std::optional<Upos> parse_upos(std::string_view name);
const std::array<Upos, kUposCount>& all_upos();

enum class EntityType : std::uint8_t {
  PERSON, NORP, GPE, LOC, ORG, DATE, TIME, PERCENT, MONEY, QUANTITY, ORDINAL, CARDINAL, OTHER
};
inline constexpr std::size_t kEntityTypeCount = 13;

std::string_view entity_type_name(EntityType type);
std::optional<EntityType> parse_entity_type(std::string_view name);
const std::array<EntityType, kEntityTypeCount>& all_entity_types();

// Half-open byte offsets into the source text.
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const CharSpan&, const CharSpan&) = default;
};

// Half-open token indices.
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  friend bool operator==(const TokenRange&, const TokenRange&) = default;
};

struct Token {
  std::string surface;
  std::string lemma;
  Upos pos = Upos::X;
  bool is_stopword = false;
  int syllable_count = 0;
  CharSpan span;
  friend bool operator==(const Token&, const Token&) = default;
};

struct EntitySpan {
  TokenRange tokens;
  EntityType type = EntityType::OTHER;
  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

struct AnnotatedDocument {
  std::string source;
  std::vector<Token> tokens;
  std::vector<TokenRange> sentences;
  std::vector<EntitySpan> entities;
  friend bool operator==(const AnnotatedDocument&, const AnnotatedDocument&) = default;
};

// Splits text into surface tokens with byte spans. Whitespace separates
// tokens; punctuation is split off; contractions split at the apostrophe
// ("don't" -> "do" "n't"); abbreviations on the fixed list keep their period.
std::vector<Token> tokenize(std::string_view source);

// Sentence boundaries fall after . ! ? (and runs of them), absorbing any
// closing quotes or brackets that follow. Trailing tokens form a last sentence.
std::vector<TokenRange> split_sentences(std::span<const Token> tokens);

// Maximal vowel groups (a e i o u y), minus a silent final "e" unless the word
// ends in consonant + "le"; at least 1 for any token with a letter.
int count_syllables(std::string_view surface);

// The fixed abbreviation list used by the tokenizer and sentence splitter.
bool is_abbreviation(std::string_view lowercase_surface);

// Token classification shared by tokenizer, tagger and features.
bool is_punctuation_token(std::string_view surface);
bool is_symbol_token(std::string_view surface);
bool is_numeric_token(std::string_view surface);
bool has_alpha(std::string_view surface);
std::size_t utf8_length(std::string_view text);

}  // namespace stylo
