#pragma once

#include <string>
#include <vector>

#include "favar/bvar.hpp"
#include "favar/config.hpp"
#include "favar/panel.hpp"
#include "favar/reduce.hpp"
#include "favar/structural.hpp"

namespace favar {

// Everything produced on the way from a raw panel to an identified VAR:
// the transformed/standardized panel, factors, the VAR block and its
// posterior, and the loadings used to map VAR responses to series.
struct StructuralFit {
  Panel transformed;
  Panel standardized;               // policy column left in its own units
  std::vector<Eigen::Index> info_cols;  // informational columns (reducer input targets)
  FactorSet factors;
  Eigen::MatrixXd var_y;            // T×K VAR data
  std::vector<std::string> var_names;
  int policy_position = -1;         // K-1 under the policy scheme
  BvarPosterior posterior;
  MinnesotaPrior prior;
  LinearizedLoadings full_loadings;  // all VAR columns -> informational panel
  LinearizedLoadings pre_policy_loadings;  // columns before the policy rate
  IdentificationScheme scheme;
  Eigen::VectorXd uncertainty;      // proxy scheme only
};

// Builds the VAR for the configured scheme:
//  - policy: [factors from slow series, observed series, policy rate],
//    policy ordered last, shocked with config.policy_shock;
//  - uncertainty: [uncertainty index, factors from all informational
//    series, observed series, policy rate], index first, shocked with
//    config.uncertainty_shock.
// `raw` is the untransformed panel (metadata attached).
StructuralFit fit_structural(const Panel& raw, const RunConfig& config);

// IRF targets for the requested mnemonics. Informational series load on
// the VAR variables through the linearized loadings; under the policy
// scheme, slow series load only on the pre-policy block. VAR members
// splice their own response rows.
std::vector<IrfTarget> make_targets(const StructuralFit& fit,
                                    const std::vector<std::string>& names,
                                    bool original_units);

// Hidden layer sizes scaled from the reference architecture (designed
// for `reference_n` inputs) down to an `n_inputs`-wide panel, keeping
// them strictly decreasing and above q.
std::vector<int> scaled_hidden_sizes(int n_inputs, int q,
                                     const std::vector<int>& reference,
                                     int reference_n);

}  // namespace favar
