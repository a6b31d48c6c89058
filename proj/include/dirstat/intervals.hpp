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
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dirstat/core.hpp"

namespace dirstat::intervals {

/// Two-sided estimate of a binomial proportion, 0 <= lower <= upper <= 1.
struct Interval {
  double lower = 0.0;
  double upper = 1.0;

  double width() const noexcept { return upper - lower; }
  bool contains(double p) const noexcept { return lower <= p && p <= upper; }
};

/// Nominal error allocated below the lower bound (overestimation, alpha_l)
/// and above the upper bound (underestimation, alpha_u).
struct TailSpec {
  double alpha_l = 0.025;
  double alpha_u = 0.025;

  static TailSpec equal(double alpha) { return {alpha / 2.0, alpha / 2.0}; }
  /// Throws ConfigError unless both are >= 0 and the sum lies in (0,1).
  void validate() const;
};

/// Absolute tolerance of every bound solved by bisection.
inline constexpr double kBoundTolerance = 1e-10;

/// Exact interval from the binomial tails: lower solves P(X >= x) = alpha_l
/// (0 when x = 0 or alpha_l = 0), upper solves P(X <= x) = alpha_u (1 when
/// x = n or alpha_u = 0).
Interval clopper_pearson(std::uint32_t x, std::uint32_t n, TailSpec tails);

struct ShortestSplit {
  Interval interval;
  /// Error allocated to the lower tail; the upper tail gets alpha - gamma.
  double gamma = 0.0;
};

/// Clopper-Pearson interval whose split of alpha between the two tails
/// minimises the width. Searched on a 1001-point grid over [0, alpha] and
/// refined by golden section; near-ties resolve to the equal split.
ShortestSplit zielinski_split(std::uint32_t x, std::uint32_t n, double alpha);
Interval zielinski_shortest(std::uint32_t x, std::uint32_t n, double alpha);

/// p_hat +/- z sqrt(p_hat (1 - p_hat) / n), clipped to [0, 1].
Interval wald(std::uint32_t x, std::uint32_t n, double alpha);

/// Highest posterior density interval of Beta(x + 1/2, n - x + 1/2).
/// One-sided at 0 (x = 0) or 1 (x = n) where the density is monotone.
Interval jeffreys_hpd(std::uint32_t x, std::uint32_t n, double alpha);

enum class Estimator : std::uint8_t { CpEqual, CpShortest, Wald, JeffreysHpd };

inline constexpr Estimator kAllEstimators[] = {Estimator::CpEqual, Estimator::CpShortest, Estimator::Wald,
                                               Estimator::JeffreysHpd};

/// "cp-equal", "cp-shortest", "wald", "jeffreys-hpd".
std::string_view to_string(Estimator e) noexcept;
Estimator parse_estimator(std::string_view name);

Interval estimate(Estimator e, std::uint32_t x, std::uint32_t n, double alpha);

using IntervalEstimator = std::function<Interval(std::uint32_t x, std::uint32_t n, double alpha)>;
IntervalEstimator estimator_fn(Estimator e);

/// Intervals for every x in 0..n.
std::vector<Interval> interval_table(const IntervalEstimator& estimator, std::uint32_t n, double alpha);

/// Exact directional profile of an estimator at one true proportion.
struct IntervalAudit {
  std::uint32_t n = 0;
  double p = 0.0;
  double coverage = 0.0;
  /// P(lower > p): the interval overestimates.
  double alpha_l_realized = 0.0;
  /// P(upper < p): the interval underestimates.
  double alpha_u_realized = 0.0;
  /// E[x/n - lower]
  double left_half_width = 0.0;
  /// E[upper - x/n]
  double right_half_width = 0.0;
  double expected_width = 0.0;
};

/// Full enumeration over x = 0..n with the binomial pmf; no sampling.
IntervalAudit exact_audit(const IntervalEstimator& estimator, std::uint32_t n, double p, double alpha);
/// Same, from a precomputed interval_table.
IntervalAudit exact_audit(std::span<const Interval> by_x, double p);

/// Reads an interval as a test of theta = theta0.
DirectionalDecision ci_test_duality(const Interval& interval, double theta0);
DirectionalDecision ci_test_duality(const IntervalEstimator& estimator, std::uint32_t x, std::uint32_t n,
                                    double theta0, double alpha);

/// {0.01, 0.02, ..., 0.99}
std::vector<double> default_p_grid();

}  // namespace dirstat::intervals
