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

#include "dirstat/survival.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dirstat/special.hpp"

namespace dirstat::survival {

void validate(std::span<const SurvivalRecord> records) {
  for (std::size_t i = 0; i < records.size(); ++i)
    if (!std::isfinite(records[i].time) || !(records[i].time > 0.0))
      throw Error("record " + std::to_string(i) + ": time must be finite and positive");
}

namespace {

// Indices sorted by time, events first at tied times.
std::vector<std::size_t> time_order(std::span<const SurvivalRecord> records) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (records[a].time != records[b].time) return records[a].time < records[b].time;
    return records[a].event && !records[b].event;
  });
  return order;
}

}  // namespace

double KmCurve::at(double t) const {
  auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 1.0;
  return survival[static_cast<std::size_t>(it - times.begin()) - 1];
}

KmCurve km_estimate(std::span<const SurvivalRecord> records, std::optional<Group> group) {
  validate(records);
  std::vector<SurvivalRecord> selected;
  for (const auto& r : records)
    if (!group || r.group == *group) selected.push_back(r);
  if (selected.empty()) throw DegenerateData("no records in the selected group");

  const auto order = time_order(selected);
  KmCurve curve;
  auto remaining = static_cast<std::uint32_t>(selected.size());
  double s = 1.0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double t = selected[order[i]].time;
    std::uint32_t deaths = 0, leaving = 0;
    for (; i < order.size() && selected[order[i]].time == t; ++i) {
      deaths += selected[order[i]].event ? 1 : 0;
      ++leaving;
    }
    if (deaths > 0) {
      s *= 1.0 - static_cast<double>(deaths) / remaining;
      curve.times.push_back(t);
      curve.survival.push_back(s);
      curve.at_risk.push_back(remaining);
      curve.events.push_back(deaths);
    }
    remaining -= leaving;
  }
  return curve;
}

std::optional<double> median_survival(const KmCurve& curve) {
  for (std::size_t i = 0; i < curve.times.size(); ++i)
    if (curve.survival[i] <= 0.5) return curve.times[i];
  return std::nullopt;
}

WeightScheme WeightScheme::fleming_harrington(double rho, double gamma) {
  if (!(rho >= 0.0) || !(gamma >= 0.0) || !std::isfinite(rho) || !std::isfinite(gamma))
    throw ConfigError("Fleming-Harrington rho and gamma must be finite and >= 0");
  return WeightScheme(Kind::FlemingHarrington, rho, gamma);
}

std::string WeightScheme::name() const {
  switch (kind_) {
    case Kind::LogRank: return "logrank";
    case Kind::GehanBreslow: return "gehan-breslow";
    case Kind::TaroneWare: return "tarone-ware";
    case Kind::FlemingHarrington: {
      std::ostringstream os;
      os.precision(17);
      os << "fleming-harrington(" << rho_ << "," << gamma_ << ")";
      return os.str();
    }
  }
  return "?";
}

WeightScheme WeightScheme::parse(std::string_view text) {
  if (text == "logrank" || text == "log-rank") return log_rank();
  if (text == "gehan-breslow" || text == "gehan") return gehan_breslow();
  if (text == "tarone-ware") return tarone_ware();
  constexpr std::string_view fh = "fleming-harrington(";
  if (text.starts_with(fh) && text.ends_with(")")) {
    const auto body = text.substr(fh.size(), text.size() - fh.size() - 1);
    const auto comma = body.find(',');
    if (comma != std::string_view::npos) {
      double rho = 0.0, gamma = 0.0;
      const auto a = body.substr(0, comma), b = body.substr(comma + 1);
      const auto ra = std::from_chars(a.data(), a.data() + a.size(), rho);
      const auto rb = std::from_chars(b.data(), b.data() + b.size(), gamma);
      if (ra.ec == std::errc{} && ra.ptr == a.data() + a.size() && rb.ec == std::errc{} &&
          rb.ptr == b.data() + b.size())
        return fleming_harrington(rho, gamma);
    }
  }
  throw ConfigError("unknown weight scheme '" + std::string(text) + "'");
}

EventTable event_table(std::span<const SurvivalRecord> records) {
  validate(records);
  const auto order = time_order(records);
  double n_a = 0.0, n = static_cast<double>(records.size());
  for (const auto& r : records) n_a += r.group == Group::A ? 1.0 : 0.0;

  EventTable table;
  double pooled = 1.0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double t = records[order[i]].time;
    double d_a = 0.0, d = 0.0, leave_a = 0.0, leave = 0.0;
    for (; i < order.size() && records[order[i]].time == t; ++i) {
      const auto& r = records[order[i]];
      const double in_a = r.group == Group::A ? 1.0 : 0.0;
      if (r.event) {
        d += 1.0;
        d_a += in_a;
      }
      leave += 1.0;
      leave_a += in_a;
    }
    if (d > 0.0) {
      table.times.push_back(t);
      table.n_a.push_back(n_a);
      table.d_a.push_back(d_a);
      table.n.push_back(n);
      table.d.push_back(d);
      table.pooled_km_left.push_back(pooled);
      pooled *= 1.0 - d / n;
    }
    n -= leave;
    n_a -= leave_a;
  }
  return table;
}

std::vector<double> scheme_weights(const EventTable& table, const WeightScheme& scheme) {
  std::vector<double> w(table.times.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    switch (scheme.kind()) {
      case WeightScheme::Kind::LogRank: w[i] = 1.0; break;
      case WeightScheme::Kind::GehanBreslow: w[i] = table.n[i]; break;
      case WeightScheme::Kind::TaroneWare: w[i] = std::sqrt(table.n[i]); break;
      case WeightScheme::Kind::FlemingHarrington: {
        const double s = table.pooled_km_left[i];
        w[i] = std::pow(s, scheme.rho()) * std::pow(1.0 - s, scheme.gamma());
        break;
      }
    }
  }
  return w;
}

TestOutcome LogRankResult::outcome() const {
  TestOutcome o;
  o.statistic = z;
  o.p_value = p_value;
  o.observed_direction = direction_of(z);
  return o;
}

LogRankResult weighted_logrank(std::span<const SurvivalRecord> records, const WeightScheme& scheme) {
  const bool has_a = std::any_of(records.begin(), records.end(), [](auto& r) { return r.group == Group::A; });
  const bool has_b = std::any_of(records.begin(), records.end(), [](auto& r) { return r.group == Group::B; });
  if (!has_a || !has_b) throw ConfigError("both groups must be non-empty");

  const EventTable table = event_table(records);
  if (table.times.empty()) throw DegenerateData("degenerate comparison: no events");
  const auto w = scheme_weights(table, scheme);

  LogRankResult result;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double share = table.n_a[i] / table.n[i];
    result.u += w[i] * (table.d_a[i] - table.d[i] * share);
    if (table.n[i] > 1.0)
      result.variance += w[i] * w[i] * table.d[i] * share * (1.0 - share) * (table.n[i] - table.d[i]) /
                         (table.n[i] - 1.0);
  }
  if (!(result.variance > 0.0)) throw DegenerateData("degenerate comparison: zero variance");
  result.z = result.u / std::sqrt(result.variance);
  result.p_value = two_sided_normal_p(result.z);
  return result;
}

DirectionalDecision logrank_direction(const LogRankResult& result, double alpha) {
  return decide(result.p_value, direction_of(result.z), alpha);
}

}  // namespace dirstat::survival
