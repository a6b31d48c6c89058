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

#include "dirstat/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dirstat/special.hpp"

namespace dirstat::scenarios {

namespace {

// Calibrated once with `dirstat calibrate-roc`; see README.
constexpr double kDefaultSigmaY = 3.0;
constexpr double kDefaultRho = 0.4;
constexpr double kTargetAucX = 0.763;
constexpr double kTargetAucY = 0.759;

}  // namespace

double true_auc(double mu, double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("sigma must be > 0");
  return normal_cdf(mu / std::sqrt(1.0 + sigma * sigma));
}

double binormal_tpr(const MarkerLaw& law, double fpr) {
  const double threshold = normal_quantile(1.0 - fpr);
  return normal_cdf((law.mu - threshold) / law.sigma);
}

void RocScenarioParams::validate() const {
  if (!(x.sigma > 0.0) || !(y.sigma > 0.0)) throw ConfigError("marker spreads must be > 0");
  if (!std::isfinite(x.mu) || !std::isfinite(y.mu)) throw ConfigError("marker locations must be finite");
  if (!(rho >= -1.0 && rho <= 1.0)) throw ConfigError("rho must lie in [-1,1]");
  if (n_pos == 0 || n_neg == 0) throw ConfigError("both classes need at least one subject");
}

double RocScenarioParams::true_auc_x() const { return true_auc(x.mu, x.sigma); }
double RocScenarioParams::true_auc_y() const { return true_auc(y.mu, y.sigma); }

TrueState RocScenarioParams::truth() const {
  if (x == y) return TrueState::null();
  return TrueState::from_difference(true_auc_x() - true_auc_y());
}

RocScenarioParams calibrate_roc_scenario(double target_auc_x, double target_auc_y, double sigma_y, double rho,
                                         std::uint32_t n_pos, std::uint32_t n_neg) {
  for (double t : {target_auc_x, target_auc_y})
    if (!(t >= 0.5 && t < 1.0)) throw ConfigError("AUC target unattainable: must lie in [0.5, 1)");
  if (!(sigma_y > 0.0) || sigma_y == 1.0) throw ConfigError("sigma_y must be > 0 and differ from 1");
  RocScenarioParams p;
  p.x = {normal_quantile(target_auc_x) * std::sqrt(2.0), 1.0};
  p.y = {normal_quantile(target_auc_y) * std::sqrt(1.0 + sigma_y * sigma_y), sigma_y};
  p.rho = rho;
  p.n_pos = n_pos;
  p.n_neg = n_neg;
  p.validate();
  return p;
}

RocScenarioParams default_roc_scenario() {
  return calibrate_roc_scenario(kTargetAucX, kTargetAucY, kDefaultSigmaY, kDefaultRho);
}

RocScenarioParams null_roc_scenario() {
  RocScenarioParams p = default_roc_scenario();
  p.y = p.x;
  return p;
}

roc::PairedDiagnosticDataset generate_roc_dataset(const RocScenarioParams& params, RngStream& rng) {
  params.validate();
  const double partner = std::sqrt(std::max(0.0, 1.0 - params.rho * params.rho));
  std::vector<roc::Subject> subjects;
  subjects.reserve(params.n_pos + params.n_neg);
  for (std::uint32_t i = 0; i < params.n_pos + params.n_neg; ++i) {
    const double zx = rng.normal();
    const double zy = params.rho * zx + partner * rng.normal();
    roc::Subject s;
    s.positive = i < params.n_pos;
    if (s.positive) {
      s.marker_x = std::exp(params.x.mu + params.x.sigma * zx);
      s.marker_y = std::exp(params.y.mu + params.y.sigma * zy);
    } else {
      s.marker_x = std::exp(zx);
      s.marker_y = std::exp(zy);
    }
    subjects.push_back(s);
  }
  return roc::PairedDiagnosticDataset(std::move(subjects));
}

void PiecewiseHazard::validate() const {
  if (rates.size() != breakpoints.size() + 1) throw ConfigError("need one more hazard rate than breakpoints");
  double previous = 0.0;
  for (double b : breakpoints) {
    if (!(b > previous) || !std::isfinite(b)) throw ConfigError("breakpoints must be positive and increasing");
    previous = b;
  }
  bool any_positive = false;
  for (double r : rates) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError("hazard rates must be finite and >= 0");
    any_positive = any_positive || r > 0.0;
  }
  if (!any_positive) throw ConfigError("at least one hazard rate must be positive");
}

double PiecewiseHazard::cumulative(double t) const {
  double h = 0.0, start = 0.0;
  for (std::size_t k = 0; k < rates.size(); ++k) {
    const double end = k < breakpoints.size() ? breakpoints[k] : std::numeric_limits<double>::infinity();
    if (t <= end) return h + rates[k] * (t - start);
    h += rates[k] * (end - start);
    start = end;
  }
  return h;
}

double PiecewiseHazard::survival(double t) const { return std::exp(-cumulative(t)); }

double PiecewiseHazard::inverse_cumulative(double target) const {
  double h = 0.0, start = 0.0;
  for (std::size_t k = 0; k < rates.size(); ++k) {
    const double end = k < breakpoints.size() ? breakpoints[k] : std::numeric_limits<double>::infinity();
    const double piece = rates[k] * (end - start);
    if (rates[k] > 0.0 && h + piece >= target) return start + (target - h) / rates[k];
    h += piece;
    start = end;
  }
  return std::numeric_limits<double>::infinity();
}

double PiecewiseHazard::median() const { return inverse_cumulative(std::log(2.0)); }

void SurvivalScenarioParams::validate() const {
  group_a.validate();
  group_b.validate();
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw ConfigError("cutoff must be positive");
  if (n_a == 0 || n_b == 0) throw ConfigError("both groups need at least one subject");
}

TrueState SurvivalScenarioParams::truth() const {
  const double ma = group_a.median(), mb = group_b.median();
  // Medians reached through different hazard pieces may differ by rounding.
  if (ma == mb || std::abs(ma - mb) <= 1e-9 * std::max(1.0, std::abs(ma))) return TrueState::null();
  return TrueState::effect(mb > ma ? Direction::Greater : Direction::Less);
}

std::vector<survival::SurvivalRecord> generate_survival_dataset(const SurvivalScenarioParams& params,
                                                                RngStream& rng) {
  params.validate();
  std::vector<survival::SurvivalRecord> records;
  records.reserve(params.n_a + params.n_b);
  auto draw = [&](const PiecewiseHazard& hazard, survival::Group g, std::uint32_t count) {
    for (std::uint32_t i = 0; i < count; ++i) {
      const double t = hazard.inverse_cumulative(-std::log(rng.uniform_open()));
      if (t < params.cutoff && t > 0.0)
        records.push_back({t, true, g});
      else
        records.push_back({params.cutoff, false, g});
    }
  };
  draw(params.group_a, survival::Group::A, params.n_a);
  draw(params.group_b, survival::Group::B, params.n_b);
  return records;
}

SurvivalScenarioParams crossing_scenario() {
  SurvivalScenarioParams p;
  p.group_a = {{5.0}, {0.05, 0.50}};
  p.group_b = {{5.0}, {0.21, 0.05}};
  p.cutoff = 15.0;
  p.n_a = p.n_b = 2000;
  return p;
}

SurvivalScenarioParams equal_median_scenario() {
  constexpr double kHazardA = 0.1;
  constexpr double kEarlyEnd = 0.5;
  constexpr double kEarlyHazardB = 1.0;
  constexpr double kCatchUp = 6.0;
  SurvivalScenarioParams p;
  p.group_a = {{}, {kHazardA}};
  // B's low middle hazard brings both cumulative hazards level at kCatchUp,
  // before the common median; from there on the groups are identical.
  const double middle = (kHazardA * kCatchUp - kEarlyHazardB * kEarlyEnd) / (kCatchUp - kEarlyEnd);
  p.group_b = {{kEarlyEnd, kCatchUp}, {kEarlyHazardB, middle, kHazardA}};
  p.cutoff = 10.0;
  p.n_a = p.n_b = 500;
  return p;
}

TestOutcome single_observation_draw(double delta, RngStream& rng) {
  const double m_x = delta + rng.normal();
  const double m_y = rng.normal();
  TestOutcome out;
  out.statistic = m_x - m_y;
  out.p_value = 0.0;
  out.observed_direction = direction_of(out.statistic);
  return out;
}

ErrorDecomposition single_observation_example(double delta, std::uint64_t n_reps, const RngStream& rng) {
  if (n_reps < 1) throw ConfigError("n_reps must be >= 1");
  ErrorDecomposition tally(TrueState::from_difference(delta));
  for (std::uint64_t i = 0; i < n_reps; ++i) {
    RngStream stream = rng.substream(i);
    tally.add(decide(single_observation_draw(delta, stream), 0.05));
  }
  return tally;
}

void BinomialScenarioParams::validate() const {
  if (n == 0) throw ConfigError("n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0,1]");
  if (!(theta0 >= 0.0 && theta0 <= 1.0)) throw ConfigError("theta0 must lie in [0,1]");
}

std::uint32_t draw_binomial(const BinomialScenarioParams& params, RngStream& rng) {
  params.validate();
  std::uint32_t x = 0;
  for (std::uint32_t i = 0; i < params.n; ++i) x += rng.uniform() < params.p ? 1 : 0;
  return x;
}

}  // namespace dirstat::scenarios
