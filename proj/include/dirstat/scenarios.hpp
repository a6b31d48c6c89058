// Copyright 2026 The dirstat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "dirstat/core.hpp"
#include "dirstat/roc.hpp"
#include "dirstat/rng.hpp"
#include "dirstat/survival.hpp"

namespace dirstat::scenarios {

// ---------------------------------------------------------------------------
// Crossing ROC curves
// ---------------------------------------------------------------------------

/// Positive-class law of one marker on the log scale; negatives are N(0, 1)
/// on the log scale.
struct MarkerLaw {
  double mu = 0.0;
  double sigma = 1.0;
  friend bool operator==(const MarkerLaw&, const MarkerLaw&) = default;
};

struct RocScenarioParams {
  MarkerLaw x;
  MarkerLaw y{0.0, 2.0};
  /// Within-class correlation of the latent normals (Gaussian copula).
  double rho = 0.5;
  std::uint32_t n_pos = 100;
  std::uint32_t n_neg = 100;

  /// Throws ConfigError on sigma <= 0, |rho| > 1 or an empty class.
  void validate() const;
  double true_auc_x() const;
  double true_auc_y() const;
  /// Sign of the true AUC difference x - y.
  TrueState truth() const;

  friend bool operator==(const RocScenarioParams&, const RocScenarioParams&) = default;
};

/// Phi(mu / sqrt(1 + sigma^2)): AUC of a log-normal marker against the
/// standard log-normal negatives. Requires sigma > 0.
double true_auc(double mu, double sigma);

/// Binormal TPR at a given FPR for the marker law.
double binormal_tpr(const MarkerLaw& law, double fpr);

/// sigma_x = 1; mu_x and mu_y solved from the AUC targets. Targets must lie
/// in [0.5, 1) and sigma_y must differ from 1 so the curves cross.
RocScenarioParams calibrate_roc_scenario(double target_auc_x, double target_auc_y, double sigma_y,
                                         double rho, std::uint32_t n_pos = 100, std::uint32_t n_neg = 100);

/// Frozen defaults: AUC targets 0.763 / 0.759, see config/scenarios.json.
RocScenarioParams default_roc_scenario();
/// Both markers with the same law as the default marker x.
RocScenarioParams null_roc_scenario();

/// Positives first, then negatives.
roc::PairedDiagnosticDataset generate_roc_dataset(const RocScenarioParams& params, RngStream& rng);

// ---------------------------------------------------------------------------
// Survival
// ---------------------------------------------------------------------------

/// Piecewise-constant hazard: rates[0] on [0, breakpoints[0]), ...,
/// rates.back() after the last breakpoint.
struct PiecewiseHazard {
  std::vector<double> breakpoints;
  std::vector<double> rates;

  void validate() const;
  double cumulative(double t) const;
  double survival(double t) const;
  /// Smallest t with cumulative(t) = h; +inf when never reached.
  double inverse_cumulative(double h) const;
  /// Analytic median; +inf when survival never reaches 1/2.
  double median() const;

  friend bool operator==(const PiecewiseHazard&, const PiecewiseHazard&) = default;
};

struct SurvivalScenarioParams {
  PiecewiseHazard group_a;
  PiecewiseHazard group_b;
  /// Administrative censoring time.
  double cutoff = 15.0;
  std::uint32_t n_a = 2000;
  std::uint32_t n_b = 2000;

  void validate() const;
  /// Median criterion: Greater when group B has the longer true median; medians
  /// within 1e-9 (relative) count as equal.
  TrueState truth() const;

  friend bool operator==(const SurvivalScenarioParams&, const SurvivalScenarioParams&) = default;
};

/// Inverse-transform draws from each group's cumulative hazard, censored at
/// the cutoff. Group A records first.
std::vector<survival::SurvivalRecord> generate_survival_dataset(const SurvivalScenarioParams& params,
                                                                RngStream& rng);

/// Crossing hazards: A is good early and poor late, B the reverse.
SurvivalScenarioParams crossing_scenario();

/// Identical true medians; B has the higher early hazard and the groups coincide
/// from a catch-up time before the median.
SurvivalScenarioParams equal_median_scenario();

/// Seed used for the frozen crossing dataset shipped in data/.
inline constexpr std::uint64_t kFrozenCrossingSeed = 20210318;

// ---------------------------------------------------------------------------
// Single observation per group
// ---------------------------------------------------------------------------

/// One N(delta, 1) draw against one N(0, 1) draw, deciding by the sign of
/// the difference alone (every experiment rejects). Replication i uses
/// rng.substream(i).
ErrorDecomposition single_observation_example(double delta, std::uint64_t n_reps, const RngStream& rng);

/// One replication of the rule above.
TestOutcome single_observation_draw(double delta, RngStream& rng);

// ---------------------------------------------------------------------------
// Binomial
// ---------------------------------------------------------------------------

struct BinomialScenarioParams {
  std::uint32_t n = 30;
  double p = 0.5;
  double theta0 = 0.5;

  void validate() const;
  TrueState truth() const { return TrueState::from_difference(p - theta0); }
  friend bool operator==(const BinomialScenarioParams&, const BinomialScenarioParams&) = default;
};

/// Number of successes in n Bernoulli(p) trials.
std::uint32_t draw_binomial(const BinomialScenarioParams& params, RngStream& rng);

}  // namespace dirstat::scenarios
