#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace stylo {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  // {"columns": [...], "rows": [[...]]}; numeric cells become JSON numbers.
  std::string to_json() const;
};

enum class TableFormat { csv, json };

// Everything an experiment writes:
//   <out>/report.json, <out>/tables/<name>.{csv,json}, plus extra files
//   (plots/*.svg, models/*.json, ...) given by path relative to <out>.
struct ReportBundle {
  std::string experiment_id;
  std::uint64_t seed = 0;
  // Serialized JSON object with every option needed to re-run the command.
  std::string config_json = "{}";
  std::vector<Table> tables;
  std::vector<std::pair<std::string, std::string>> files;
  std::vector<std::string> notes;

  void add_file(std::string relative_path, std::string content) {
    files.emplace_back(std::move(relative_path), std::move(content));
  }
};

// report.json: experiment, tool version, seed, config snapshot, tables,
// sorted artifact paths and notes. No timestamps, so reruns are
// byte-identical.
std::string report_json(const ReportBundle& bundle, TableFormat format);
void write_bundle(const ReportBundle& bundle, const std::string& out_dir, TableFormat format);

}  // namespace stylo
