#include "favar/panel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "favar/errors.hpp"
#include "favar/stats.hpp"

namespace favar {

Speed parse_speed(const std::string& text) {
  if (text == "slow") return Speed::Slow;
  if (text == "fast") return Speed::Fast;
  if (text == "policy") return Speed::Policy;
  if (text == "observed") return Speed::Observed;
  if (text.empty()) return Speed::Unset;
  fail(ErrorKind::Metadata, "unknown speed label '" + text + "'");
}

std::string speed_name(Speed s) {
  switch (s) {
    case Speed::Slow:
      return "slow";
    case Speed::Fast:
      return "fast";
    case Speed::Policy:
      return "policy";
    case Speed::Observed:
      return "observed";
    default:
      return "";
  }
}

Eigen::Index Panel::column(const std::string& mnemonic) const {
  for (Eigen::Index j = 0; j < cols(); ++j) {
    if (meta[j].mnemonic == mnemonic) return j;
  }
  fail(ErrorKind::Metadata, "no series named '" + mnemonic + "'");
}

Panel Panel::truncated(const QDate& end) const {
  Eigen::Index keep = 0;
  while (keep < rows() && dates[keep] <= end) ++keep;
  return head(keep);
}

Panel Panel::head(Eigen::Index n) const {
  if (n > rows()) fail(ErrorKind::Parameter, "head: too few rows");
  Panel out = *this;
  out.dates.assign(dates.begin(), dates.begin() + n);
  out.values = values.topRows(n);
  return out;
}

Panel Panel::select(const std::vector<Eigen::Index>& cols_keep) const {
  Panel out;
  out.dates = dates;
  out.transformed = transformed;
  out.values.resize(rows(), static_cast<Eigen::Index>(cols_keep.size()));
  for (std::size_t i = 0; i < cols_keep.size(); ++i) {
    Eigen::Index j = cols_keep[i];
    if (j < 0 || j >= cols()) fail(ErrorKind::Parameter, "select: bad column");
    out.values.col(static_cast<Eigen::Index>(i)) = values.col(j);
    out.meta.push_back(meta[j]);
    if (!standardization.empty()) {
      out.standardization.push_back(standardization[j]);
    }
  }
  return out;
}

namespace {

int parse_code(const std::string& text) {
  int code = 0;
  try {
    code = std::stoi(text);
  } catch (...) {
    fail(ErrorKind::Format, "transform code '" + text + "' is not an integer");
  }
  if (code != 1 && code != 5 && code != 50 && code != 7) {
    fail(ErrorKind::Code,
         "unknown transform code " + std::to_string(code));
  }
  return code;
}

double parse_cell(const std::string& text, const std::string& where) {
  if (text.empty() || text == "NA") {
    return std::numeric_limits<double>::quiet_NaN();
  }
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (...) {
    fail(ErrorKind::Format, "non-numeric cell '" + text + "' at " + where);
  }
}

}  // namespace

Panel load_csv(const std::string& path, const std::string& meta_path) {
  auto rows = read_csv_rows(path);
  if (rows.size() < 3) fail(ErrorKind::Format, path + ": need header rows plus data");
  const auto& header = rows[0];
  const auto& codes = rows[1];
  if (header.size() < 2) fail(ErrorKind::Format, path + ": no series columns");
  if (codes.size() != header.size()) {
    fail(ErrorKind::Format, path + ": code row width mismatch");
  }

  Panel panel;
  Eigen::Index n = static_cast<Eigen::Index>(header.size()) - 1;
  std::set<std::string> seen;
  for (Eigen::Index j = 0; j < n; ++j) {
    SeriesMeta m;
    m.mnemonic = header[static_cast<std::size_t>(j) + 1];
    if (m.mnemonic.empty()) fail(ErrorKind::Format, path + ": empty mnemonic");
    if (!seen.insert(m.mnemonic).second) {
      fail(ErrorKind::Metadata, "duplicate mnemonic '" + m.mnemonic + "'");
    }
    m.transform_code = parse_code(codes[static_cast<std::size_t>(j) + 1]);
    panel.meta.push_back(std::move(m));
  }

  Eigen::Index t = static_cast<Eigen::Index>(rows.size()) - 2;
  panel.values.resize(t, n);
  for (Eigen::Index i = 0; i < t; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i) + 2];
    if (static_cast<Eigen::Index>(row.size()) != n + 1) {
      fail(ErrorKind::Format,
           path + ": row " + std::to_string(i + 3) + " width mismatch");
    }
    QDate date = parse_qdate(row[0]);
    if (i > 0 && !(panel.dates.back().next() == date)) {
      fail(ErrorKind::Date, path + ": dates not consecutive quarters at " +
                                row[0]);
    }
    panel.dates.push_back(date);
    for (Eigen::Index j = 0; j < n; ++j) {
      panel.values(i, j) =
          parse_cell(row[static_cast<std::size_t>(j) + 1],
                     row[0] + "/" + panel.meta[j].mnemonic);
    }
  }

  if (!meta_path.empty()) {
    auto mrows = read_csv_rows(meta_path);
    if (mrows.empty()) fail(ErrorKind::Format, meta_path + ": empty");
    std::size_t start = 0;
    if (!mrows[0].empty() && mrows[0][0] == "mnemonic") start = 1;
    std::set<std::string> labeled;
    for (std::size_t r = start; r < mrows.size(); ++r) {
      const auto& row = mrows[r];
      if (row.size() < 3) {
        fail(ErrorKind::Format, meta_path + ": need mnemonic,speed,group");
      }
      if (!labeled.insert(row[0]).second) {
        fail(ErrorKind::Metadata, "duplicate metadata for '" + row[0] + "'");
      }
      bool found = false;
      for (auto& m : panel.meta) {
        if (m.mnemonic != row[0]) continue;
        m.speed = parse_speed(row[1]);
        m.group = row[2];
        if (row.size() > 3) m.description = row[3];
        found = true;
        break;
      }
      if (!found) {
        fail(ErrorKind::Metadata,
             meta_path + ": metadata for unknown series '" + row[0] + "'");
      }
    }
    for (const auto& m : panel.meta) {
      if (!labeled.count(m.mnemonic)) {
        fail(ErrorKind::Metadata, "no metadata row for '" + m.mnemonic + "'");
      }
    }
  }
  return panel;
}

int transform_burn_in(int code) {
  switch (code) {
    case 1:
      return 0;
    case 5:
      return 1;
    case 7:
      return 2;
    case 50:
      return 4;
    default:
      fail(ErrorKind::Code, "unknown transform code " + std::to_string(code));
  }
}

Panel apply_transforms(const Panel& panel) {
  if (panel.transformed) return panel;
  int burn = 0;
  for (const auto& m : panel.meta) {
    burn = std::max(burn, transform_burn_in(m.transform_code));
  }
  Eigen::Index t = panel.rows();
  if (t - burn < 2) fail(ErrorKind::Format, "panel too short after burn-in");

  Panel out;
  out.meta = panel.meta;
  out.transformed = true;
  out.dates.assign(panel.dates.begin() + burn, panel.dates.end());
  out.values.resize(t - burn, panel.cols());

  for (Eigen::Index j = 0; j < panel.cols(); ++j) {
    const auto& m = panel.meta[j];
    Eigen::VectorXd x = panel.values.col(j);
    Eigen::VectorXd z(t);
    z.setConstant(std::numeric_limits<double>::quiet_NaN());
    auto need_positive = [&](Eigen::Index i) {
      if (!(x(i) > 0.0)) {
        fail(ErrorKind::Domain, "series '" + m.mnemonic +
                                    "' has nonpositive value under a log code");
      }
    };
    switch (m.transform_code) {
      case 1:
        z = x;
        break;
      case 5:
        for (Eigen::Index i = 1; i < t; ++i) {
          need_positive(i);
          need_positive(i - 1);
          z(i) = std::log(x(i)) - std::log(x(i - 1));
        }
        break;
      case 50:
        for (Eigen::Index i = 4; i < t; ++i) {
          need_positive(i);
          need_positive(i - 4);
          z(i) = std::log(x(i)) - std::log(x(i - 4));
        }
        break;
      case 7:
        for (Eigen::Index i = 2; i < t; ++i) {
          if (x(i - 1) == 0.0 || x(i - 2) == 0.0) {
            fail(ErrorKind::Domain,
                 "series '" + m.mnemonic + "' divides by zero under code 7");
          }
          z(i) = (x(i) / x(i - 1) - 1.0) - (x(i - 1) / x(i - 2) - 1.0);
        }
        break;
      default:
        fail(ErrorKind::Code, "unknown transform code");
    }
    out.values.col(j) = z.tail(t - burn);
    if (!out.values.col(j).allFinite()) {
      fail(ErrorKind::Format,
           "series '" + m.mnemonic + "' has missing values after burn-in");
    }
  }
  return out;
}

Panel standardize(const Panel& panel, const std::vector<Eigen::Index>& skip) {
  if (panel.rows() < 2) fail(ErrorKind::Parameter, "standardize: T < 2");
  Panel out = panel;
  out.standardization.assign(static_cast<std::size_t>(panel.cols()), {0.0, 1.0});
  for (Eigen::Index j = 0; j < panel.cols(); ++j) {
    if (std::find(skip.begin(), skip.end(), j) != skip.end()) continue;
    double mu = panel.values.col(j).mean();
    double sd = stddev(panel.values.col(j));
    if (!(sd > 0.0)) {
      fail(ErrorKind::Degenerate,
           "series '" + panel.meta[j].mnemonic + "' has zero variance");
    }
    out.values.col(j) = (panel.values.col(j).array() - mu) / sd;
    out.standardization[static_cast<std::size_t>(j)] = {mu, sd};
  }
  return out;
}

SpeedSplit split_speeds(const Panel& panel) {
  std::vector<Eigen::Index> slow, fast, observed, policy;
  for (Eigen::Index j = 0; j < panel.cols(); ++j) {
    switch (panel.meta[j].speed) {
      case Speed::Slow:
        slow.push_back(j);
        break;
      case Speed::Fast:
        fast.push_back(j);
        break;
      case Speed::Observed:
        observed.push_back(j);
        break;
      case Speed::Policy:
        policy.push_back(j);
        break;
      default:
        fail(ErrorKind::Metadata, "series '" + panel.meta[j].mnemonic +
                                      "' has no speed label");
    }
  }
  if (policy.size() > 1) {
    fail(ErrorKind::Metadata, "more than one policy series");
  }
  return SpeedSplit{panel.select(slow), panel.select(fast),
                    panel.select(observed), panel.select(policy)};
}

std::string panel_to_csv(const Panel& panel) {
  std::ostringstream out;
  out << "date";
  for (const auto& m : panel.meta) out << ',' << m.mnemonic;
  out << "\ntcode";
  for (const auto& m : panel.meta) out << ',' << m.transform_code;
  out << '\n';
  for (Eigen::Index i = 0; i < panel.rows(); ++i) {
    out << panel.dates[static_cast<std::size_t>(i)].iso();
    for (Eigen::Index j = 0; j < panel.cols(); ++j) {
      out << ',' << format_double(panel.values(i, j));
    }
    out << '\n';
  }
  return out.str();
}

void write_panel_csv(const Panel& panel, const std::string& path) {
  write_text_file(path, panel_to_csv(panel));
}

}  // namespace favar
