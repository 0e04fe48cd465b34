#include "favar/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "favar/errors.hpp"

namespace favar {

namespace {

int quarter_from_month(int month, const std::string& text) {
  switch (month) {
    case 1:
      return 1;
    case 4:
      return 2;
    case 7:
      return 3;
    case 10:
      return 4;
    default:
      fail(ErrorKind::Date, "date '" + text + "' is not a quarter start");
  }
}

}  // namespace

std::string QDate::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-01", year, (quarter - 1) * 3 + 1);
  return buf;
}

std::string QDate::label() const {
  char buf[12];
  std::snprintf(buf, sizeof(buf), "%04dQ%d", year, quarter);
  return buf;
}

QDate parse_qdate(const std::string& text) {
  int y = 0;
  int m = 0;
  int d = 0;
  char q = 0;
  if (std::sscanf(text.c_str(), "%d-%d-%d", &y, &m, &d) == 3) {
    if (d != 1) fail(ErrorKind::Date, "date '" + text + "' is not day 1");
    return QDate{y, quarter_from_month(m, text)};
  }
  if (std::sscanf(text.c_str(), "%d%c%d", &y, &q, &m) == 3 &&
      (q == 'Q' || q == 'q')) {
    if (m < 1 || m > 4) {
      fail(ErrorKind::Date, "quarter out of range in '" + text + "'");
    }
    return QDate{y, m};
  }
  fail(ErrorKind::Date, "unparseable date '" + text + "'");
}

std::vector<std::vector<std::string>> read_csv_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == EOF) break;
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write " + path);
  out << content;
  if (!out) fail(ErrorKind::Io, "write failed for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace favar
