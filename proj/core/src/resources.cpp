#include "stylo/resources.hpp"

#include <charconv>
#include <utility>

#include "stylo/error.hpp"
#include "stylo/util.hpp"

namespace stylo::detail {
extern const std::pair<std::string_view, std::string_view> kEmbeddedFiles[];
extern const std::size_t kEmbeddedFileCount;
}  // namespace stylo::detail

namespace stylo::resources {

std::string_view embedded(std::string_view name) {
  for (std::size_t i = 0; i < detail::kEmbeddedFileCount; ++i) {
    if (detail::kEmbeddedFiles[i].first == name) return detail::kEmbeddedFiles[i].second;
  }
  throw IoError("no bundled resource named '" + std::string(name) + "'");
}

std::vector<std::string_view> embedded_names() {
  std::vector<std::string_view> names;
  for (std::size_t i = 0; i < detail::kEmbeddedFileCount; ++i) names.push_back(detail::kEmbeddedFiles[i].first);
  return names;
}

std::vector<VersionedLine> read_versioned(std::string_view text, std::string_view magic, int supported_version) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != magic) {
    throw ParseError("missing '" + std::string(magic) + "' header", 1);
  }
  if (lines.size() < 2 || !lines[1].starts_with("version ")) {
    throw ParseError("missing format version line", 2);
  }
  int version = 0;
  const std::string_view digits = std::string_view(lines[1]).substr(8);
  const auto parsed = std::from_chars(digits.data(), digits.data() + digits.size(), version);
  if (parsed.ec != std::errc() || parsed.ptr != digits.data() + digits.size()) {
    throw ParseError("malformed format version", 2);
  }
  if (version != supported_version) {
    throw ValidationError("unsupported " + std::string(magic) + " version " + std::to_string(version) +
                          " (expected " + std::to_string(supported_version) + ")");
  }
  std::vector<VersionedLine> out;
  out.reserve(lines.size());
  for (std::size_t i = 2; i < lines.size(); ++i) out.push_back({i + 1, lines[i]});
  return out;
}

}  // namespace stylo::resources
