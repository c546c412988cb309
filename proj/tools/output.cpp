#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#ifndef LINC_VERSION
#define LINC_VERSION "unknown"
#endif

namespace linc::cli {

void Table::add(std::vector<double> row, std::vector<std::string> key) {
  if (row.size() != columns.size() || key.size() != key_columns.size())
    throw ContractViolation("table " + name + ": row width does not match the header");
  rows.push_back(std::move(row));
  keys.push_back(std::move(key));
}

bool Table::has_nan() const {
  for (const auto& r : rows)
    for (double x : r)
      if (std::isnan(x)) return true;
  return false;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string write_table(const Table& t, const RunConfig& rc, const std::string& command) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(rc.out_dir, ec);
  if (ec) throw ConfigurationError("output.dir: cannot create " + rc.out_dir + ": " + ec.message());
  const fs::path path = fs::path(rc.out_dir) / (t.name + "." + rc.format);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigurationError("output.dir: cannot write " + path.string());

  if (rc.format == "csv") {
    f << "# linc " << LINC_VERSION << "\n# command: " << command << "\n# config: " << rc.resolved.dump() << "\n";
    for (const auto& n : t.notes) f << "# " << n << "\n";
    bool first = true;
    for (const auto& c : t.key_columns) f << (first ? "" : ",") << c, first = false;
    for (const auto& c : t.columns) f << (first ? "" : ",") << c, first = false;
    f << "\n";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      first = true;
      for (const auto& k : t.keys[i]) f << (first ? "" : ",") << k, first = false;
      for (double x : t.rows[i]) f << (first ? "" : ",") << format_number(x), first = false;
      f << "\n";
    }
  } else {
    // Numbers go through the same 12-digit text so both formats agree.
    nlohmann::ordered_json j;
    j["version"] = LINC_VERSION;
    j["command"] = command;
    j["config"] = rc.resolved;
    j["notes"] = t.notes;
    std::vector<std::string> cols = t.key_columns;
    cols.insert(cols.end(), t.columns.begin(), t.columns.end());
    j["columns"] = cols;
    j["rows"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (const auto& k : t.keys[i]) row.push_back(k);
      for (double x : t.rows[i]) {
        if (std::isfinite(x)) row.push_back(nlohmann::ordered_json::parse(format_number(x)));
        else row.push_back(nullptr);
      }
      j["rows"].push_back(row);
    }
    f << j.dump(1) << "\n";
  }
  if (!f) throw ConfigurationError("output.dir: write failed for " + path.string());
  return path.string();
}

}  // namespace linc::cli
