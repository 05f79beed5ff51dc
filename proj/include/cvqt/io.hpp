#pragma once

// Deterministic CSV/JSON emission: 17-significant-digit decimals, '\n' line
// endings, sorted JSON keys.  Every data file is paired with a manifest that
// suffices to re-run the command that produced it.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvqt/errors.hpp"
#include "cvqt/version.hpp"

namespace cvqt::io {

using json = nlohmann::json;

inline std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// Column-named table of doubles; the only shape the CLI emits.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row) {
    if (row.size() != columns.size())
      throw ValidationError("Table: row width does not match column schema");
    rows.push_back(std::move(row));
  }
};

inline std::string to_csv(const Table& table) {
  std::string out;
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

// Manifest: command echo, parameter set, column schema, row count, version
// and numerical controls.  nlohmann::json orders keys lexicographically, so
// serialization is deterministic.
inline json make_manifest(const std::string& command, const json& params,
                          const Table& table, const json& controls) {
  json manifest;
  manifest["command"] = command;
  manifest["parameters"] = params;
  manifest["columns"] = table.columns;
  manifest["rows"] = table.rows.size();
  manifest["numerical_controls"] = controls;
  manifest["version"] = std::string(kVersion);
  return manifest;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << text;
  if (!out) throw NumericError("write failed: " + path);
}

inline void write_table(const std::string& path, const Table& table,
                        const json& manifest) {
  write_text(path, to_csv(table));
  write_text(path + ".manifest.json", manifest.dump(2) + "\n");
}

}  // namespace cvqt::io
