#pragma once

#include <string>
#include <vector>

#include "run_config.hpp"

namespace linc::cli {

// A table of numbers with optional string key columns in front.
struct Table {
  std::string name;  // file stem
  std::vector<std::string> key_columns, columns;
  std::vector<std::vector<std::string>> keys;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> notes;  // extra header comment lines

  void add(std::vector<double> row, std::vector<std::string> key = {});
  bool has_nan() const;
};

// Writes <dir>/<name>.csv or .json. Numbers use 12 significant digits and
// every file starts with the artifact version, command and resolved config.
std::string write_table(const Table& t, const RunConfig& rc, const std::string& command);

std::string format_number(double x);

}  // namespace linc::cli
