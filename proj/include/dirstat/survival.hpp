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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dirstat/core.hpp"

namespace dirstat::survival {

enum class Group : std::uint8_t { A, B };

struct SurvivalRecord {
  double time = 0.0;  // > 0
  bool event = false;  // false = censored
  Group group = Group::A;
};

/// Throws Error when a time is not finite and positive.
void validate(std::span<const SurvivalRecord> records);

/// Kaplan-Meier product-limit curve. Steps occur only at event times; at a
/// tied time, events happen before censorings.
struct KmCurve {
  std::vector<double> times;          // distinct event times, ascending
  std::vector<double> survival;       // S just after times[i]
  std::vector<std::uint32_t> at_risk;
  std::vector<std::uint32_t> events;

  /// Right-continuous S(t); 1 before the first event time.
  double at(double t) const;
};

/// Restrict to one group when `group` is set. Throws DegenerateData when the
/// selection is empty.
KmCurve km_estimate(std::span<const SurvivalRecord> records, std::optional<Group> group = std::nullopt);

/// Smallest event time with S(t) <= 0.5; absent when S stays above 0.5.
std::optional<double> median_survival(const KmCurve& curve);

class WeightScheme {
 public:
  enum class Kind : std::uint8_t { LogRank, GehanBreslow, TaroneWare, FlemingHarrington };

  static WeightScheme log_rank() { return WeightScheme(Kind::LogRank); }
  static WeightScheme gehan_breslow() { return WeightScheme(Kind::GehanBreslow); }
  static WeightScheme tarone_ware() { return WeightScheme(Kind::TaroneWare); }
  /// rho, gamma >= 0.
  static WeightScheme fleming_harrington(double rho, double gamma);

  Kind kind() const noexcept { return kind_; }
  double rho() const noexcept { return rho_; }
  double gamma() const noexcept { return gamma_; }

  /// "logrank", "gehan-breslow", "tarone-ware", "fleming-harrington(rho,gamma)".
  std::string name() const;
  static WeightScheme parse(std::string_view text);

  friend bool operator==(const WeightScheme&, const WeightScheme&) = default;

 private:
  explicit WeightScheme(Kind k, double rho = 0.0, double gamma = 0.0) : kind_(k), rho_(rho), gamma_(gamma) {}
  Kind kind_;
  double rho_;
  double gamma_;
};

/// Per distinct pooled event time: group A and total risk sets and deaths,
/// plus the pooled KM left limit S(t-).
struct EventTable {
  std::vector<double> times;
  std::vector<double> n_a;
  std::vector<double> d_a;
  std::vector<double> n;
  std::vector<double> d;
  std::vector<double> pooled_km_left;
};

EventTable event_table(std::span<const SurvivalRecord> records);
std::vector<double> scheme_weights(const EventTable& table, const WeightScheme& scheme);

struct LogRankResult {
  /// u / sqrt(variance). Positive: group A has more events than expected,
  /// i.e. B survives better under this weighting.
  double z = 0.0;
  double p_value = 1.0;
  double u = 0.0;
  double variance = 0.0;

  TestOutcome outcome() const;
};

/// Weighted log-rank test with a two-sided normal p-value. Throws
/// DegenerateData("degenerate comparison") when the variance is zero and
/// ConfigError when a group is empty.
LogRankResult weighted_logrank(std::span<const SurvivalRecord> records, const WeightScheme& scheme);

/// ConcludeGreater means group B survives better.
DirectionalDecision logrank_direction(const LogRankResult& result, double alpha);

}  // namespace dirstat::survival
