#include <algorithm>

#include "stylo/textpipe.hpp"

namespace stylo {
namespace {

bool is_terminal(std::string_view surface) {
  if (surface == "\xE2\x80\xA6") return true;  // ellipsis character
  return !surface.empty() &&
         std::all_of(surface.begin(), surface.end(), [](char c) { return c == '.' || c == '!' || c == '?'; });
}

bool is_closer(std::string_view surface) {
  static constexpr std::string_view kClosers[] = {"\"", "'", ")", "]", "}", "\xE2\x80\x9D", "\xE2\x80\x99",
                                                  "\xC2\xBB"};
  return std::any_of(std::begin(kClosers), std::end(kClosers), [&](std::string_view c) { return c == surface; });
}

}  // namespace

std::vector<TokenRange> split_sentences(std::span<const Token> tokens) {
  std::vector<TokenRange> sentences;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!is_terminal(tokens[i].surface)) {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < tokens.size() && (is_terminal(tokens[end].surface) || is_closer(tokens[end].surface))) ++end;
    sentences.push_back({start, end});
    start = end;
    i = end;
  }
  if (start < tokens.size()) sentences.push_back({start, tokens.size()});
  return sentences;
}

}  // namespace stylo
