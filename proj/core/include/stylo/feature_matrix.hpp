#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

class Annotator;
class FeatureRegistry;

// Row-major real matrix with named columns and per-row ids and labels.
struct FeatureMatrix {
  std::vector<std::string> row_ids;
  std::vector<int> labels;
  std::vector<std::string> column_names;
  std::string registry_version;
  std::vector<double> values;

  std::size_t rows() const { return row_ids.size(); }
  std::size_t cols() const { return column_names.size(); }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * cols(), cols()}; }
  std::span<double> row(std::size_t i) { return {values.data() + i * cols(), cols()}; }
  double at(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }
  std::vector<double> column(std::size_t j) const;

  // Throws ContractError when sizes disagree.
  void check_shape() const;
  void append_row(std::string id, int label, std::span<const double> row_values);

  FeatureMatrix take_rows(std::span<const std::size_t> indices) const;
  // Throws ValidationError naming unknown columns.
  FeatureMatrix take_columns(std::span<const std::string> names) const;
  std::size_t column_index(std::string_view name) const;
};

FeatureMatrix vstack(std::span<const FeatureMatrix> parts);

// "id,label,<names>" header, one row per line, shortest round-trip doubles.
std::string to_csv(const FeatureMatrix& matrix);
FeatureMatrix parse_matrix_csv(std::string_view text);
// Also checks the columns equal the registry's names and stamps its version.
FeatureMatrix parse_matrix_csv(std::string_view text, const FeatureRegistry& registry);

// Annotates and extracts every text on up to `threads` workers. Row order
// follows the input order.
FeatureMatrix extract_matrix(std::span<const std::string> ids, std::span<const std::string> texts,
                             std::span<const int> labels, const FeatureRegistry& registry,
                             const Annotator& annotator, unsigned threads);

}  // namespace stylo
