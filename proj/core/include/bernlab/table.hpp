#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace bernlab {

// Column-named result table. CSV output is RFC-4180-style with a leading
// `#schema=` comment line; doubles are printed with 17 significant digits so
// re-runs are byte-comparable.
struct Table {
  using Cell = std::variant<long long, double, std::string>;

  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  static std::string format_cell(const Cell& c) {
    char buf[40];
    if (std::holds_alternative<long long>(c)) {
      std::snprintf(buf, sizeof(buf), "%lld", std::get<long long>(c));
      return buf;
    }
    if (std::holds_alternative<double>(c)) {
      std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(c));
      return buf;
    }
    const std::string& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    q += '"';
    return q;
  }

  void write_csv(std::ostream& os) const {
    os << "#schema=" << schema << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
      os << columns[i] << (i + 1 < columns.size() ? "," : "");
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        os << format_cell(row[i]) << (i + 1 < row.size() ? "," : "");
      os << "\n";
    }
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json r;
      for (std::size_t i = 0; i < row.size() && i < columns.size(); ++i) {
        std::visit([&](const auto& v) { r[columns[i]] = v; }, row[i]);
      }
      rows_json.push_back(r);
    }
    nlohmann::ordered_json j;
    j["schema"] = schema;
    j["rows"] = rows_json;
    return j;
  }
};

}  // namespace bernlab
