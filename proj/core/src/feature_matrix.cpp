#include "stylo/feature_matrix.hpp"

#include <algorithm>

#include "stylo/annotator.hpp"
#include "stylo/error.hpp"
#include "stylo/features.hpp"
#include "stylo/util.hpp"

namespace stylo {

std::vector<double> FeatureMatrix::column(std::size_t j) const {
  std::vector<double> out(rows());
  for (std::size_t i = 0; i < rows(); ++i) out[i] = at(i, j);
  return out;
}

void FeatureMatrix::check_shape() const {
  if (labels.size() != rows()) throw ContractError("feature matrix: label count does not match row count");
  if (values.size() != rows() * cols()) throw ContractError("feature matrix: value count does not match shape");
}

void FeatureMatrix::append_row(std::string id, int label, std::span<const double> row_values) {
  if (row_values.size() != cols()) throw ContractError("feature matrix: row width does not match column count");
  row_ids.push_back(std::move(id));
  labels.push_back(label);
  values.insert(values.end(), row_values.begin(), row_values.end());
}

FeatureMatrix FeatureMatrix::take_rows(std::span<const std::size_t> indices) const {
  FeatureMatrix out;
  out.column_names = column_names;
  out.registry_version = registry_version;
  out.values.reserve(indices.size() * cols());
  for (std::size_t i : indices) {
    if (i >= rows()) throw ContractError("feature matrix: row index out of range");
    out.append_row(row_ids[i], labels[i], row(i));
  }
  return out;
}

std::size_t FeatureMatrix::column_index(std::string_view name) const {
  for (std::size_t j = 0; j < column_names.size(); ++j) {
    if (column_names[j] == name) return j;
  }
  throw ValidationError("unknown feature '" + std::string(name) + "'");
}

FeatureMatrix FeatureMatrix::take_columns(std::span<const std::string> names) const {
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  for (const auto& name : names) idx.push_back(column_index(name));
  FeatureMatrix out;
  out.row_ids = row_ids;
  out.labels = labels;
  out.column_names.assign(names.begin(), names.end());
  out.registry_version = registry_version;
  out.values.reserve(rows() * idx.size());
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j : idx) out.values.push_back(at(i, j));
  }
  return out;
}

FeatureMatrix vstack(std::span<const FeatureMatrix> parts) {
  FeatureMatrix out;
  if (parts.empty()) return out;
  out.column_names = parts.front().column_names;
  out.registry_version = parts.front().registry_version;
  for (const auto& part : parts) {
    if (part.column_names != out.column_names || part.registry_version != out.registry_version) {
      throw ValidationError("cannot stack feature matrices with different columns or registry versions");
    }
    for (std::size_t i = 0; i < part.rows(); ++i) out.append_row(part.row_ids[i], part.labels[i], part.row(i));
  }
  return out;
}

std::string to_csv(const FeatureMatrix& matrix) {
  matrix.check_shape();
  std::vector<std::string> fields{"id", "label"};
  fields.insert(fields.end(), matrix.column_names.begin(), matrix.column_names.end());
  std::string out = csv_join(fields) + "\n";
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    fields.assign({matrix.row_ids[i], std::to_string(matrix.labels[i])});
    for (double v : matrix.row(i)) fields.push_back(format_double(v));
    out += csv_join(fields);
    out += '\n';
  }
  return out;
}

FeatureMatrix parse_matrix_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines.front().empty()) throw ParseError("feature CSV: missing header", 1);
  const auto header = csv_split(lines.front());
  if (header.size() < 2 || header[0] != "id" || header[1] != "label") {
    throw ParseError("feature CSV: header must start with 'id,label'", 1);
  }
  FeatureMatrix out;
  out.column_names.assign(header.begin() + 2, header.end());
  std::vector<double> row(out.cols());
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (lines[n].empty()) continue;
    const auto fields = csv_split(lines[n]);
    if (fields.size() != header.size()) throw ParseError("feature CSV: wrong field count", n + 1);
    int label = 0;
    if (fields[1] == "0") {
      label = 0;
    } else if (fields[1] == "1") {
      label = 1;
    } else {
      throw ParseError("feature CSV: label must be 0 or 1", n + 1);
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      try {
        row[j] = parse_double(fields[j + 2]);
      } catch (const ValidationError&) {
        throw ParseError("feature CSV: bad number '" + fields[j + 2] + "'", n + 1);
      }
    }
    out.append_row(fields[0], label, row);
  }
  return out;
}

FeatureMatrix parse_matrix_csv(std::string_view text, const FeatureRegistry& registry) {
  FeatureMatrix out = parse_matrix_csv(text);
  if (out.column_names != registry.names()) {
    throw ValidationError("feature CSV columns do not match the feature registry");
  }
  out.registry_version = registry.version();
  return out;
}

FeatureMatrix extract_matrix(std::span<const std::string> ids, std::span<const std::string> texts,
                             std::span<const int> labels, const FeatureRegistry& registry,
                             const Annotator& annotator, unsigned threads) {
  if (ids.size() != texts.size() || ids.size() != labels.size()) {
    throw ContractError("extract_matrix: ids, texts and labels must have equal length");
  }
  FeatureMatrix out;
  out.row_ids.assign(ids.begin(), ids.end());
  out.labels.assign(labels.begin(), labels.end());
  out.column_names = registry.names();
  out.registry_version = registry.version();
  out.values.assign(ids.size() * registry.size(), 0.0);
  parallel_for(ids.size(), threads, [&](std::size_t i) {
    const auto row = registry.extract(annotator.annotate(texts[i]));
    std::copy(row.begin(), row.end(), out.values.begin() + static_cast<std::ptrdiff_t>(i * registry.size()));
  });
  return out;
}

}  // namespace stylo
