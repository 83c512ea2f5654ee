#pragma once

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "vdwcp/errors.hpp"

namespace vdwcp {

// Numeric table with leading '# ' annotation lines, one header row, and
// uniform-width numeric rows. Values are written with 17 significant digits,
// which is enough for a binary64 to survive a write/read/write cycle with
// byte-identical output.
struct Table {
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void validate() const {
    if (columns.empty()) throw ConfigError("table has no columns");
    for (const auto& r : rows)
      if (r.size() != columns.size())
        throw ConfigError("table row width does not match the header");
  }
};

inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& s) {
  const char* c = s.c_str();
  char* end = nullptr;
  double v = std::strtod(c, &end);
  while (end && *end == ' ') ++end;
  if (end == c || (end && *end != '\0'))
    throw ConfigError("not a number: '" + s + "'");
  return v;
}

inline void write_csv(std::ostream& os, const Table& table) {
  table.validate();
  for (const auto& note : table.notes) os << "# " << note << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << format_full(row[i]);
    os << "\n";
  }
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline Table read_csv(std::istream& is) {
  Table table;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t start = line.size() > 1 && line[1] == ' ' ? 2 : 1;
      if (!have_header) table.notes.push_back(line.substr(start));
      continue;
    }
    if (!have_header) {
      table.columns = split_fields(line);
      have_header = true;
      continue;
    }
    auto fields = split_fields(line);
    if (fields.size() != table.columns.size())
      throw ConfigError("csv row width does not match the header");
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f));
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw ConfigError("csv input has no header row");
  return table;
}

inline std::string to_csv_string(const Table& table) {
  std::ostringstream os;
  write_csv(os, table);
  return os.str();
}

}  // namespace vdwcp
