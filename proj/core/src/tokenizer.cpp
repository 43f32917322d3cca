#include <algorithm>
#include <array>
#include <cstring>

#include "stylo/textpipe.hpp"
#include "stylo/util.hpp"

namespace stylo {
namespace {

constexpr std::array<std::string_view, kUposCount> kUposNames = {
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};

constexpr std::array<std::string_view, kEntityTypeCount> kEntityNames = {
    "PERSON", "NORP", "GPE", "LOC", "ORG", "DATE", "TIME",
    "PERCENT", "MONEY", "QUANTITY", "ORDINAL", "CARDINAL", "OTHER"};

enum class CharClass { Space, Word, Punct, Symbol, Apostrophe };

struct CodePoint {
  std::size_t length;
  CharClass cls;
};

struct MultiByte {
  std::string_view bytes;
  CharClass cls;
};

// Multi-byte characters that are not word characters. Everything else above
// ASCII is treated as part of a word.
constexpr MultiByte kMultiByte[] = {
    {"\xE2\x80\x9C", CharClass::Punct},       // left double quote
    {"\xE2\x80\x9D", CharClass::Punct},       // right double quote
    {"\xE2\x80\x98", CharClass::Punct},       // left single quote
    {"\xE2\x80\x99", CharClass::Apostrophe},  // right single quote / apostrophe
    {"\xE2\x80\x94", CharClass::Punct},       // em dash
    {"\xE2\x80\x93", CharClass::Punct},       // en dash
    {"\xE2\x80\xA6", CharClass::Punct},       // ellipsis
    {"\xE2\x80\xA2", CharClass::Punct},       // bullet
    {"\xE2\x80\xB2", CharClass::Punct},       // prime
    {"\xC2\xAB", CharClass::Punct},           // guillemets
    {"\xC2\xBB", CharClass::Punct},
    {"\xC2\xBF", CharClass::Punct},           // inverted question mark
    {"\xC2\xA1", CharClass::Punct},           // inverted exclamation mark
    {"\xC2\xB7", CharClass::Punct},           // middle dot
    {"\xC2\xA0", CharClass::Symbol},          // no-break space
    {"\xE2\x82\xAC", CharClass::Symbol},      // euro
    {"\xC2\xA3", CharClass::Symbol},          // pound
    {"\xC2\xA5", CharClass::Symbol},          // yen
    {"\xC2\xA9", CharClass::Symbol},          // copyright
    {"\xC2\xB0", CharClass::Symbol},          // degree
    {"\xC2\xB1", CharClass::Symbol},          // plus-minus
    {"\xC3\x97", CharClass::Symbol},          // multiplication
    {"\xC3\xB7", CharClass::Symbol},          // division
};

constexpr std::string_view kAsciiSymbols = "$%+=<>^|~#&*@`/\\";

constexpr std::string_view kAbbreviations[] = {"mr.", "mrs.", "dr.", "e.g.", "i.e.", "etc.", "vs.", "u.s."};

constexpr std::string_view kContractionSuffixes[] = {"s", "re", "ve", "ll", "d", "m"};

bool is_ascii_alnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ascii_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_ascii_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

std::size_t utf8_sequence_length(std::string_view text, std::size_t i) {
  const auto lead = static_cast<unsigned char>(text[i]);
  std::size_t len = 1;
  if (lead >= 0xF0 && lead < 0xF8) {
    len = 4;
  } else if (lead >= 0xE0) {
    len = lead < 0xF0 ? 3 : 1;
  } else if (lead >= 0xC0) {
    len = 2;
  }
  if (i + len > text.size()) return 1;
  for (std::size_t k = 1; k < len; ++k) {
    if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) return 1;
  }
  return len;
}

CodePoint classify(std::string_view text, std::size_t i) {
  const auto c = static_cast<unsigned char>(text[i]);
  if (c < 0x80) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') return {1, CharClass::Space};
    if (is_ascii_alnum(c)) return {1, CharClass::Word};
    if (c == '\'') return {1, CharClass::Apostrophe};
    if (kAsciiSymbols.find(static_cast<char>(c)) != std::string_view::npos) return {1, CharClass::Symbol};
    if (c < 0x20 || c == 0x7F) return {1, CharClass::Symbol};
    return {1, CharClass::Punct};
  }
  const std::size_t len = utf8_sequence_length(text, i);
  const std::string_view seq = text.substr(i, len);
  for (const auto& mb : kMultiByte) {
    if (mb.bytes == seq) return {len, mb.cls};
  }
  return {len, CharClass::Word};
}

bool is_word(std::string_view text, std::size_t i) { return classify(text, i).cls == CharClass::Word; }

// Byte length of the code point ending at position `end` (exclusive).
std::size_t previous_length(std::string_view text, std::size_t begin, std::size_t end) {
  std::size_t start = end - 1;
  while (start > begin && (static_cast<unsigned char>(text[start]) & 0xC0) == 0x80) --start;
  return end - start;
}

struct Piece {
  std::size_t begin;
  std::size_t end;
};

// Splits a contraction-bearing word at its apostrophe.
void split_contraction(std::string_view source, Piece word, std::vector<Piece>& out) {
  const std::string_view text = source.substr(word.begin, word.end - word.begin);
  const std::string lower = to_lower_ascii(text);
  // n't: either ASCII apostrophe or U+2019
  for (std::string_view neg : {std::string_view("n't"), std::string_view("n\xE2\x80\x99t")}) {
    if (lower.size() > neg.size() && lower.ends_with(neg)) {
      const std::size_t cut = word.end - neg.size();
      out.push_back({word.begin, cut});
      out.push_back({cut, word.end});
      return;
    }
  }
  for (std::string_view apostrophe : {std::string_view("'"), std::string_view("\xE2\x80\x99")}) {
    const std::size_t pos = lower.rfind(apostrophe);
    if (pos == std::string::npos || pos == 0) continue;
    const std::string_view suffix = std::string_view(lower).substr(pos + apostrophe.size());
    const bool known = std::any_of(std::begin(kContractionSuffixes), std::end(kContractionSuffixes),
                                   [&](std::string_view s) { return s == suffix; });
    if (known) {
      out.push_back({word.begin, word.begin + pos});
      out.push_back({word.begin + pos, word.end});
      return;
    }
  }
  out.push_back(word);
}

bool is_contraction_piece(std::string_view text) {
  const std::string lower = to_lower_ascii(text);
  if (lower == "n't" || lower == "n\xE2\x80\x99t") return true;
  for (std::string_view apostrophe : {std::string_view("'"), std::string_view("\xE2\x80\x99")}) {
    if (!lower.starts_with(apostrophe)) continue;
    const std::string_view suffix = std::string_view(lower).substr(apostrophe.size());
    for (auto s : kContractionSuffixes) {
      if (s == suffix) return true;
    }
  }
  return false;
}

// Splits the core of a chunk (leading/trailing punctuation already removed).
void split_core(std::string_view source, std::size_t begin, std::size_t end, std::vector<Piece>& out) {
  std::size_t i = begin;
  while (i < end) {
    const CodePoint cp = classify(source, i);
    if (cp.cls == CharClass::Word) {
      std::size_t j = i + cp.length;
      bool has_apostrophe = false;
      while (j < end) {
        const CodePoint next = classify(source, j);
        if (next.cls == CharClass::Word) {
          j += next.length;
          continue;
        }
        const std::size_t after = j + next.length;
        if (after >= end || !is_word(source, after)) break;
        const auto prev = static_cast<unsigned char>(source[j - 1]);
        const auto following = static_cast<unsigned char>(source[after]);
        const char sep = source[j];
        bool joins = false;
        if (next.cls == CharClass::Apostrophe) {
          joins = true;
          has_apostrophe = true;
        } else if (sep == '-') {
          joins = true;
        } else if (sep == '.' || sep == ',') {
          joins = (is_ascii_digit(prev) && is_ascii_digit(following)) ||
                  (sep == '.' && is_ascii_alpha(prev) && is_ascii_alpha(following) &&
                   (j - 1 == begin || !is_word(source, j - 2)));
        }
        if (!joins) break;
        j = after;
      }
      const Piece word{i, j};
      if (has_apostrophe) {
        split_contraction(source, word, out);
      } else {
        out.push_back(word);
      }
      i = j;
    } else {
      // Runs of the same non-word character form one token ("...", "--").
      std::size_t j = i + cp.length;
      while (j + cp.length <= end && source.compare(j, cp.length, source.substr(i, cp.length)) == 0) {
        j += cp.length;
      }
      out.push_back({i, j});
      i = j;
    }
  }
}

void split_chunk(std::string_view source, std::size_t begin, std::size_t end, std::vector<Piece>& out) {
  // Whole-chunk abbreviations and standalone contraction pieces stay intact.
  const std::string_view whole = source.substr(begin, end - begin);
  if (is_abbreviation(to_lower_ascii(whole)) || is_contraction_piece(whole)) {
    out.push_back({begin, end});
    return;
  }
  std::size_t lo = begin;
  while (lo < end) {
    const CodePoint cp = classify(source, lo);
    if (cp.cls == CharClass::Word) break;
    const std::string_view rest = source.substr(lo, end - lo);
    if (cp.cls == CharClass::Apostrophe && is_contraction_piece(rest)) break;
    std::size_t j = lo + cp.length;
    while (j + cp.length <= end && source.compare(j, cp.length, source.substr(lo, cp.length)) == 0) {
      j += cp.length;
    }
    out.push_back({lo, j});
    lo = j;
  }
  std::vector<Piece> trailing;
  std::size_t hi = end;
  while (hi > lo) {
    const std::size_t len = previous_length(source, lo, hi);
    const CodePoint cp = classify(source, hi - len);
    if (cp.cls == CharClass::Word) break;
    if (source[hi - 1] == '.' && is_abbreviation(to_lower_ascii(source.substr(lo, hi - lo)))) break;
    std::size_t start = hi - len;
    while (start >= lo + len && source.compare(start - len, len, source.substr(hi - len, len)) == 0) {
      start -= len;
    }
    trailing.push_back({start, hi});
    hi = start;
  }
  if (lo < hi) {
    const std::string_view core = source.substr(lo, hi - lo);
    if (is_abbreviation(to_lower_ascii(core)) || is_contraction_piece(core)) {
      out.push_back({lo, hi});
    } else {
      split_core(source, lo, hi, out);
    }
  }
  out.insert(out.end(), trailing.rbegin(), trailing.rend());
}

}  // namespace

std::string_view upos_name(Upos tag) { return kUposNames[static_cast<std::size_t>(tag)]; }

std::optional<Upos> parse_upos(std::string_view name) {
  for (std::size_t i = 0; i < kUposNames.size(); ++i) {
    if (kUposNames[i] == name) return static_cast<Upos>(i);
  }
  return std::nullopt;
}

const std::array<Upos, kUposCount>& all_upos() {
  static const std::array<Upos, kUposCount> tags = [] {
    std::array<Upos, kUposCount> t{};
    for (std::size_t i = 0; i < kUposCount; ++i) t[i] = static_cast<Upos>(i);
    return t;
  }();
  return tags;
}

std::string_view entity_type_name(EntityType type) { return kEntityNames[static_cast<std::size_t>(type)]; }

std::optional<EntityType> parse_entity_type(std::string_view name) {
  for (std::size_t i = 0; i < kEntityNames.size(); ++i) {
    if (kEntityNames[i] == name) return static_cast<EntityType>(i);
  }
  return std::nullopt;
}

const std::array<EntityType, kEntityTypeCount>& all_entity_types() {
  static const std::array<EntityType, kEntityTypeCount> types = [] {
    std::array<EntityType, kEntityTypeCount> t{};
    for (std::size_t i = 0; i < kEntityTypeCount; ++i) t[i] = static_cast<EntityType>(i);
    return t;
  }();
  return types;
}

bool is_abbreviation(std::string_view lowercase_surface) {
  return std::any_of(std::begin(kAbbreviations), std::end(kAbbreviations),
                     [&](std::string_view a) { return a == lowercase_surface; });
}

bool is_punctuation_token(std::string_view surface) {
  if (surface.empty()) return false;
  bool all_symbols = true;
  for (std::size_t i = 0; i < surface.size();) {
    const CodePoint cp = classify(surface, i);
    if (cp.cls == CharClass::Word || cp.cls == CharClass::Space) return false;
    if (cp.cls != CharClass::Symbol) all_symbols = false;
    i += cp.length;
  }
  if (is_contraction_piece(surface)) return false;
  return !all_symbols;
}

bool is_symbol_token(std::string_view surface) {
  if (surface.empty()) return false;
  for (std::size_t i = 0; i < surface.size();) {
    const CodePoint cp = classify(surface, i);
    if (cp.cls != CharClass::Symbol) return false;
    i += cp.length;
  }
  return true;
}

bool is_numeric_token(std::string_view surface) {
  if (surface.empty() || !is_ascii_digit(static_cast<unsigned char>(surface.front())) ||
      !is_ascii_digit(static_cast<unsigned char>(surface.back()))) {
    return false;
  }
  for (std::size_t i = 0; i < surface.size(); ++i) {
    const auto c = static_cast<unsigned char>(surface[i]);
    if (is_ascii_digit(c)) continue;
    if ((c == '.' || c == ',') && is_ascii_digit(static_cast<unsigned char>(surface[i - 1])) &&
        is_ascii_digit(static_cast<unsigned char>(surface[i + 1]))) {
      continue;
    }
    return false;
  }
  return true;
}

bool has_alpha(std::string_view surface) {
  for (std::size_t i = 0; i < surface.size();) {
    const CodePoint cp = classify(surface, i);
    if (cp.length == 1) {
      if (is_ascii_alpha(static_cast<unsigned char>(surface[i]))) return true;
    } else if (cp.cls == CharClass::Word) {
      return true;
    }
    i += cp.length;
  }
  return false;
}

std::size_t utf8_length(std::string_view text) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < text.size(); i += utf8_sequence_length(text, i)) ++count;
  return count;
}

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Piece> pieces;
  std::size_t i = 0;
  while (i < source.size()) {
    const CodePoint cp = classify(source, i);
    if (cp.cls == CharClass::Space) {
      i += cp.length;
      continue;
    }
    std::size_t j = i;
    while (j < source.size()) {
      const CodePoint next = classify(source, j);
      if (next.cls == CharClass::Space) break;
      j += next.length;
    }
    split_chunk(source, i, j, pieces);
    i = j;
  }
  std::vector<Token> tokens;
  tokens.reserve(pieces.size());
  for (const Piece& p : pieces) {
    Token t;
    t.surface = std::string(source.substr(p.begin, p.end - p.begin));
    t.span = {p.begin, p.end};
    tokens.push_back(std::move(t));
  }
  return tokens;
}

}  // namespace stylo
