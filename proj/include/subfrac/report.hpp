#pragma once
// Run configuration echo, report envelopes, and CSV/JSON serialization.
//
// Every CSV artifact starts with '#' comment lines carrying the tool
// version and the full run configuration, so any output file identifies the
// run that produced it.  Numbers are written with max_digits10 precision and
// round-trip exactly.

#include <cstdint>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subfrac/errors.hpp"
#include "subfrac/version.hpp"

namespace subfrac {

struct RunConfig {
  std::string command;
  std::map<std::string, std::string> params;  // ordered for stable output
  std::uint64_t seed = 0;
  std::string output_path;
  std::string format = "csv";  // "csv" or "json"

  void validate() const {
    if (command.empty()) throw parameter_error("RunConfig: command must be non-empty");
    if (format != "csv" && format != "json")
      throw parameter_error("RunConfig: format must be \"csv\" or \"json\"");
  }

  bool operator==(const RunConfig&) const = default;
};

struct ReportEnvelope {
  RunConfig config_echo;
  nlohmann::json results;
  std::int64_t wall_time_ms = 0;

  bool operator==(const ReportEnvelope&) const = default;
};

inline void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{{"command", c.command},
                     {"params", c.params},
                     {"seed", c.seed},
                     {"output_path", c.output_path},
                     {"format", c.format}};
}

inline void from_json(const nlohmann::json& j, RunConfig& c) {
  j.at("command").get_to(c.command);
  c.params = j.at("params").get<std::map<std::string, std::string>>();
  j.at("seed").get_to(c.seed);
  j.at("output_path").get_to(c.output_path);
  j.at("format").get_to(c.format);
}

inline void to_json(nlohmann::json& j, const ReportEnvelope& e) {
  j = nlohmann::json{{"version", std::string(kVersion)},
                     {"config", e.config_echo},
                     {"results", e.results},
                     {"wall_time_ms", e.wall_time_ms}};
}

inline void from_json(const nlohmann::json& j, ReportEnvelope& e) {
  e.config_echo = j.at("config").get<RunConfig>();
  e.results = j.at("results");
  j.at("wall_time_ms").get_to(e.wall_time_ms);
}

inline std::string to_json_string(const ReportEnvelope& e) {
  nlohmann::json j = e;
  return j.dump(2) + "\n";
}

inline ReportEnvelope envelope_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  return j.get<ReportEnvelope>();
}

// In-memory image of a CSV artifact.
struct CsvTable {
  std::vector<std::string> comments;  // '#' lines, without the marker
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  bool operator==(const CsvTable&) const = default;
};

inline void write_csv(std::ostream& os, const RunConfig& config,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  config.validate();
  if (columns.empty()) throw parameter_error("write_csv: need at least one column");
  os << "# subfrac " << kVersion << "\n";
  os << "# command: " << config.command << "\n";
  os << "# seed: " << config.seed << "\n";
  for (const auto& [key, value] : config.params) os << "# param " << key << ": " << value << "\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
  os << "\n";
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw parameter_error("write_csv: row width must match the column count");
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
    os << "\n";
  }
}

inline CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t start = 1;
      while (start < line.size() && line[start] == ' ') ++start;
      table.comments.push_back(line.substr(start));
      continue;
    }
    std::istringstream cells(line);
    std::string cell;
    if (!have_header) {
      while (std::getline(cells, cell, ',')) table.columns.push_back(cell);
      have_header = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(cells, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw parameter_error("read_csv: non-numeric cell \"" + cell + "\"");
      }
    }
    if (row.size() != table.columns.size())
      throw parameter_error("read_csv: row width does not match the header");
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw parameter_error("read_csv: missing header row");
  return table;
}

}  // namespace subfrac
