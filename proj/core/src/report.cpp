#include "stylo/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>

#include "json.hpp"
#include "stylo/error.hpp"
#include "stylo/util.hpp"
#include "stylo/version.hpp"

namespace stylo {
namespace {

using nlohmann::ordered_json;

ordered_json cell(const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (!text.empty() && ec == std::errc() && ptr == end && std::isfinite(value)) return value;
  return text;
}

ordered_json table_json(const Table& table) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& c : row) r.push_back(cell(c));
    rows.push_back(std::move(r));
  }
  return ordered_json{{"columns", table.columns}, {"rows", std::move(rows)}};
}

std::string table_path(const Table& table, TableFormat format) {
  return "tables/" + table.name + (format == TableFormat::csv ? ".csv" : ".json");
}

}  // namespace

std::string Table::to_csv() const {
  std::string out = csv_join(columns) + "\n";
  for (const auto& row : rows) {
    out += csv_join(row);
    out += '\n';
  }
  return out;
}

std::string Table::to_json() const { return table_json(*this).dump(1) + "\n"; }

std::string report_json(const ReportBundle& bundle, TableFormat format) {
  ordered_json config;
  try {
    config = ordered_json::parse(bundle.config_json);
  } catch (const ordered_json::parse_error&) {
    throw ContractError("report config snapshot is not valid JSON");
  }
  std::vector<std::string> artifacts;
  for (const auto& table : bundle.tables) artifacts.push_back(table_path(table, format));
  for (const auto& [path, content] : bundle.files) artifacts.push_back(path);
  std::sort(artifacts.begin(), artifacts.end());
  ordered_json tables = ordered_json::object();
  for (const auto& table : bundle.tables) tables[table.name] = table_json(table);
  const ordered_json j = {
      {"experiment", bundle.experiment_id},
      {"tool", "stylo"},
      {"version", std::string(kVersion)},
      {"seed", bundle.seed},
      {"config", std::move(config)},
      {"tables", std::move(tables)},
      {"artifacts", artifacts},
      {"notes", bundle.notes},
  };
  return j.dump(1) + "\n";
}

void write_bundle(const ReportBundle& bundle, const std::string& out_dir, TableFormat format) {
  const std::filesystem::path root(out_dir);
  for (const auto& table : bundle.tables) {
    write_file((root / table_path(table, format)).string(),
               format == TableFormat::csv ? table.to_csv() : table.to_json());
  }
  for (const auto& [path, content] : bundle.files) write_file((root / path).string(), content);
  write_file((root / "report.json").string(), report_json(bundle, format));
}

}  // namespace stylo
