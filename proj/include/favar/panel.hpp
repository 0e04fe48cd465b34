#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "favar/io.hpp"

namespace favar {

enum class Speed { Unset, Slow, Fast, Policy, Observed };

Speed parse_speed(const std::string& text);
std::string speed_name(Speed s);

struct SeriesMeta {
  std::string mnemonic;
  std::string description;
  int transform_code = 1;  // one of {1, 5, 50, 7}
  Speed speed = Speed::Slow;
  std::string group;
};

// Dated T×N data matrix plus per-series metadata. `standardization`
// holds the per-column (mean, std) pairs once standardize() has run, so
// results can be mapped back to the series' own units.
struct Panel {
  std::vector<QDate> dates;
  Eigen::MatrixXd values;
  std::vector<SeriesMeta> meta;
  std::vector<std::pair<double, double>> standardization;
  bool transformed = false;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
  // Column index of a mnemonic; metadata error if absent.
  Eigen::Index column(const std::string& mnemonic) const;
  // Keeps only rows with date <= end.
  Panel truncated(const QDate& end) const;
  // Keeps only the first `rows` rows.
  Panel head(Eigen::Index rows) const;
  // Keeps only the listed columns, in the given order.
  Panel select(const std::vector<Eigen::Index>& cols) const;
};

// Reads the panel CSV (row 1 mnemonics, row 2 transform codes, column 1
// ISO quarter-start dates) and, when given, merges speed/group metadata
// from the sidecar CSV (columns mnemonic, speed, group[, description]).
// Empty body cells are recorded as NaN; downstream transforms reject
// panels where NaNs survive the burn-in drop.
Panel load_csv(const std::string& path, const std::string& meta_path = "");

// Number of leading rows a transform code leaves undefined.
int transform_burn_in(int code);

// Applies each column's transform code (1 level, 5 one-quarter log
// difference, 50 year-on-year log difference, 7 change of the net
// growth rate) and drops the common burn-in rows.
Panel apply_transforms(const Panel& panel);

// Per-column z-scores with the 1/(T-1) std convention; (mean, std)
// stored. Columns listed in `skip` are passed through untouched (used
// for the policy rate, which stays in its own units).
Panel standardize(const Panel& panel,
                  const std::vector<Eigen::Index>& skip = {});

struct SpeedSplit {
  Panel slow;
  Panel fast;
  Panel observed;
  Panel policy;  // single column
};

// Disjoint, exhaustive partition of the columns by speed label.
SpeedSplit split_speeds(const Panel& panel);

// Serializes in the same format load_csv reads.
std::string panel_to_csv(const Panel& panel);
void write_panel_csv(const Panel& panel, const std::string& path);

}  // namespace favar
