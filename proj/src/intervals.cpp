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

#include "dirstat/intervals.hpp"

#include <algorithm>
#include <cmath>

#include "dirstat/special.hpp"

namespace dirstat::intervals {

namespace {

void check_counts(std::uint32_t x, std::uint32_t n) {
  if (n == 0) throw ConfigError("n must be >= 1");
  if (x > n) throw ConfigError("x must not exceed n");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0,1)");
}

double cp_lower(std::uint32_t x, std::uint32_t n, double alpha_l) {
  if (x == 0 || alpha_l <= 0.0) return 0.0;
  return bisect([&](double p) { return binomial_sf(x, n, p) - alpha_l; }, 0.0, 1.0, kBoundTolerance);
}

double cp_upper(std::uint32_t x, std::uint32_t n, double alpha_u) {
  if (x == n || alpha_u <= 0.0) return 1.0;
  return bisect([&](double p) { return binomial_cdf(x, n, p) - alpha_u; }, 0.0, 1.0, kBoundTolerance);
}

}  // namespace

void TailSpec::validate() const {
  if (!(alpha_l >= 0.0) || !(alpha_u >= 0.0)) throw ConfigError("tail allocations must be >= 0");
  const double total = alpha_l + alpha_u;
  if (!(total > 0.0 && total < 1.0)) throw ConfigError("total tail allocation must lie in (0,1)");
}

Interval clopper_pearson(std::uint32_t x, std::uint32_t n, TailSpec tails) {
  check_counts(x, n);
  tails.validate();
  return {cp_lower(x, n, tails.alpha_l), cp_upper(x, n, tails.alpha_u)};
}

ShortestSplit zielinski_split(std::uint32_t x, std::uint32_t n, double alpha) {
  check_counts(x, n);
  check_alpha(alpha);
  auto width_at = [&](double gamma) { return cp_upper(x, n, alpha - gamma) - cp_lower(x, n, gamma); };

  constexpr int kGrid = 1000;
  const double half = alpha / 2.0;
  double best_width = INFINITY;
  std::vector<double> widths(kGrid + 1);
  for (int k = 0; k <= kGrid; ++k) {
    widths[k] = width_at(alpha * k / kGrid);
    best_width = std::min(best_width, widths[k]);
  }
  // Among grid points tied with the minimum, keep the one nearest alpha/2.
  int best_k = -1;
  for (int k = 0; k <= kGrid; ++k)
    if (widths[k] <= best_width + 1e-12 &&
        (best_k < 0 || std::abs(k - kGrid / 2) < std::abs(best_k - kGrid / 2)))
      best_k = k;

  double best_gamma = alpha * best_k / kGrid;
  best_width = widths[best_k];

  // Golden-section refinement inside the neighbouring grid cells.
  double lo = alpha * std::max(best_k - 1, 0) / kGrid;
  double hi = alpha * std::min(best_k + 1, kGrid) / kGrid;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo), d = lo + inv_phi * (hi - lo);
  double wc = width_at(c), wd = width_at(d);
  while (hi - lo > 1e-9 * alpha) {
    if (wc < wd) {
      hi = d;
      d = c;
      wd = wc;
      c = hi - inv_phi * (hi - lo);
      wc = width_at(c);
    } else {
      lo = c;
      c = d;
      wc = wd;
      d = lo + inv_phi * (hi - lo);
      wd = width_at(d);
    }
  }
  const double refined = 0.5 * (lo + hi);
  const double refined_width = width_at(refined);
  if (refined_width < best_width - 1e-9) {
    best_gamma = refined;
    best_width = refined_width;
  }
  if (widths[kGrid / 2] <= best_width + 1e-9) best_gamma = half;

  ShortestSplit out;
  out.gamma = best_gamma;
  out.interval = {cp_lower(x, n, best_gamma), cp_upper(x, n, alpha - best_gamma)};
  return out;
}

Interval zielinski_shortest(std::uint32_t x, std::uint32_t n, double alpha) {
  return zielinski_split(x, n, alpha).interval;
}

Interval wald(std::uint32_t x, std::uint32_t n, double alpha) {
  check_counts(x, n);
  check_alpha(alpha);
  const double p_hat = static_cast<double>(x) / n;
  const double half = normal_quantile(1.0 - alpha / 2.0) * std::sqrt(p_hat * (1.0 - p_hat) / n);
  return {std::clamp(p_hat - half, 0.0, 1.0), std::clamp(p_hat + half, 0.0, 1.0)};
}

Interval jeffreys_hpd(std::uint32_t x, std::uint32_t n, double alpha) {
  check_counts(x, n);
  check_alpha(alpha);
  const double a = x + 0.5, b = n - x + 0.5;
  constexpr double tol = 1e-12;
  if (x == 0) return {0.0, beta_quantile(a, b, 1.0 - alpha, tol)};
  if (x == n) return {beta_quantile(a, b, alpha, tol), 1.0};

  // Interior mode; for a lower end l left of the mode, the upper end is the
  // point right of the mode with the same density, and the enclosed mass
  // decreases as l moves right.
  const double mode = (a - 1.0) / (a + b - 2.0);
  auto upper_for = [&](double l) {
    const double target = beta_log_pdf(a, b, l);
    return bisect([&](double u) { return beta_log_pdf(a, b, u) - target; }, mode, 1.0, tol);
  };
  const double l_max = std::min(beta_quantile(a, b, alpha, tol), mode);
  const double lower = bisect(
      [&](double l) { return incomplete_beta(a, b, upper_for(l)) - incomplete_beta(a, b, l) - (1.0 - alpha); },
      0.0, l_max, tol);
  return {lower, upper_for(lower)};
}

std::string_view to_string(Estimator e) noexcept {
  switch (e) {
    case Estimator::CpEqual: return "cp-equal";
    case Estimator::CpShortest: return "cp-shortest";
    case Estimator::Wald: return "wald";
    case Estimator::JeffreysHpd: return "jeffreys-hpd";
  }
  return "?";
}

Estimator parse_estimator(std::string_view name) {
  for (auto e : kAllEstimators)
    if (to_string(e) == name) return e;
  throw ConfigError("unknown estimator '" + std::string(name) + "'");
}

Interval estimate(Estimator e, std::uint32_t x, std::uint32_t n, double alpha) {
  switch (e) {
    case Estimator::CpEqual:
      check_alpha(alpha);
      return clopper_pearson(x, n, TailSpec::equal(alpha));
    case Estimator::CpShortest: return zielinski_shortest(x, n, alpha);
    case Estimator::Wald: return wald(x, n, alpha);
    case Estimator::JeffreysHpd: return jeffreys_hpd(x, n, alpha);
  }
  throw ConfigError("unknown estimator");
}

IntervalEstimator estimator_fn(Estimator e) {
  return [e](std::uint32_t x, std::uint32_t n, double alpha) { return estimate(e, x, n, alpha); };
}

std::vector<Interval> interval_table(const IntervalEstimator& estimator, std::uint32_t n, double alpha) {
  std::vector<Interval> table;
  table.reserve(n + 1);
  for (std::uint32_t x = 0; x <= n; ++x) table.push_back(estimator(x, n, alpha));
  return table;
}

IntervalAudit exact_audit(std::span<const Interval> by_x, double p) {
  if (by_x.size() < 2) throw ConfigError("interval table must cover x = 0..n with n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0,1]");
  const auto n = static_cast<std::uint32_t>(by_x.size() - 1);
  IntervalAudit audit;
  audit.n = n;
  audit.p = p;
  for (std::uint32_t x = 0; x <= n; ++x) {
    const double mass = binomial_pmf(x, n, p);
    const Interval& ci = by_x[x];
    const double estimate = static_cast<double>(x) / n;
    if (ci.lower > p)
      audit.alpha_l_realized += mass;
    else if (ci.upper < p)
      audit.alpha_u_realized += mass;
    else
      audit.coverage += mass;
    audit.left_half_width += mass * (estimate - ci.lower);
    audit.right_half_width += mass * (ci.upper - estimate);
    audit.expected_width += mass * (ci.upper - ci.lower);
  }
  return audit;
}

IntervalAudit exact_audit(const IntervalEstimator& estimator, std::uint32_t n, double p, double alpha) {
  const auto table = interval_table(estimator, n, alpha);
  return exact_audit(table, p);
}

DirectionalDecision ci_test_duality(const Interval& interval, double theta0) {
  if (!(theta0 >= 0.0 && theta0 <= 1.0)) throw ConfigError("theta0 must lie in [0,1]");
  if (interval.lower > theta0) return DirectionalDecision::ConcludeGreater;
  if (interval.upper < theta0) return DirectionalDecision::ConcludeLess;
  return DirectionalDecision::FailToReject;
}

DirectionalDecision ci_test_duality(const IntervalEstimator& estimator, std::uint32_t x, std::uint32_t n,
                                    double theta0, double alpha) {
  return ci_test_duality(estimator(x, n, alpha), theta0);
}

std::vector<double> default_p_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 99; ++k) grid.push_back(k / 100.0);
  return grid;
}

}  // namespace dirstat::intervals
