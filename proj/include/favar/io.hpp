#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace favar {

// Quarterly date. Stored as (year, quarter 1..4); serialized as the ISO
// quarter-start day (YYYY-01-01, -04-01, -07-01, -10-01).
struct QDate {
  int year = 0;
  int quarter = 0;

  bool operator==(const QDate&) const = default;
  bool operator<(const QDate& o) const {
    return year != o.year ? year < o.year : quarter < o.quarter;
  }
  bool operator<=(const QDate& o) const { return *this < o || *this == o; }

  QDate next() const {
    return quarter == 4 ? QDate{year + 1, 1} : QDate{year, quarter + 1};
  }
  std::string iso() const;    // "1973-04-01"
  std::string label() const;  // "1973Q2"
};

// Accepts "YYYY-MM-DD" (month must be a quarter start) or "YYYYQq".
QDate parse_qdate(const std::string& text);

// Minimal CSV support: comma-separated, no quoting (none of the formats
// here need embedded commas), trailing newline tolerated.
std::vector<std::vector<std::string>> read_csv_rows(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Fixed-format float for byte-identical reruns ("%.12g").
std::string format_double(double v);

}  // namespace favar
