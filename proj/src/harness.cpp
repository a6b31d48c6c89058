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

#include "dirstat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "dirstat/roc.hpp"

namespace dirstat::harness {

std::string_view to_string(TestKind k) noexcept {
  switch (k) {
    case TestKind::Venkatraman: return "venkatraman";
    case TestKind::BootstrapAuc: return "bootstrap_auc";
    case TestKind::WeightedLogrank: return "weighted_logrank";
    case TestKind::MedianComparison: return "median_comparison";
    case TestKind::CiDuality: return "ci_duality";
    case TestKind::SignRule: return "sign_rule";
  }
  return "?";
}

TestKind parse_test_kind(std::string_view s) {
  for (auto k : {TestKind::Venkatraman, TestKind::BootstrapAuc, TestKind::WeightedLogrank,
                 TestKind::MedianComparison, TestKind::CiDuality, TestKind::SignRule})
    if (to_string(k) == s) return k;
  throw ConfigError("unknown test '" + std::string(s) + "'");
}

std::string TestSpec::name() const {
  switch (kind) {
    case TestKind::WeightedLogrank:
    case TestKind::MedianComparison: return std::string(to_string(kind)) + "(" + scheme.name() + ")";
    case TestKind::CiDuality: return std::string(to_string(kind)) + "(" + std::string(intervals::to_string(estimator)) + ")";
    default: return std::string(to_string(kind));
  }
}

void ExperimentConfig::validate() const {
  if (n_reps < 1) throw ConfigError("n_reps must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0,1)");
  bool ok = false;
  switch (test.kind) {
    case TestKind::Venkatraman:
      ok = std::holds_alternative<scenarios::RocScenarioParams>(scenario);
      if (n_permutations < 1) throw ConfigError("n_permutations must be >= 1");
      break;
    case TestKind::BootstrapAuc:
      ok = std::holds_alternative<scenarios::RocScenarioParams>(scenario);
      if (n_boot < 100) throw ConfigError("n_boot must be >= 100");
      break;
    case TestKind::WeightedLogrank:
    case TestKind::MedianComparison:
      ok = std::holds_alternative<scenarios::SurvivalScenarioParams>(scenario);
      break;
    case TestKind::CiDuality: ok = std::holds_alternative<scenarios::BinomialScenarioParams>(scenario); break;
    case TestKind::SignRule: ok = std::holds_alternative<SingleObservationParams>(scenario); break;
  }
  if (!ok) throw ConfigError("test '" + test.name() + "' does not apply to this scenario");
  std::visit(
      [](const auto& s) {
        if constexpr (requires { s.validate(); }) s.validate();
      },
      scenario);
}

TrueState ExperimentConfig::truth() const {
  return std::visit([](const auto& s) { return s.truth(); }, scenario);
}

bool ReplicationRecord::operator==(const ReplicationRecord& o) const {
  const bool same_stat = statistic == o.statistic || (std::isnan(statistic) && std::isnan(o.statistic));
  return rep == o.rep && same_stat && p_value == o.p_value && decision == o.decision &&
         true_state == o.true_state;
}

bool ExperimentResult::same_statistics(const ExperimentResult& other) const {
  return config == other.config && decomposition == other.decomposition && records == other.records;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("DIRSTAT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

TestOutcome median_comparison(std::span<const survival::SurvivalRecord> data, const survival::WeightScheme& scheme) {
  const auto significance = survival::weighted_logrank(data, scheme);
  const auto med_a = survival::median_survival(survival::km_estimate(data, survival::Group::A));
  const auto med_b = survival::median_survival(survival::km_estimate(data, survival::Group::B));
  TestOutcome out;
  out.p_value = significance.p_value;
  if (med_a && med_b) {
    out.statistic = *med_b - *med_a;
    out.observed_direction = direction_of(out.statistic);
  } else {
    out.statistic = std::nan("");
  }
  return out;
}

// `intervals_by_x`, when non-empty, holds the CiDuality interval for every x.
TestOutcome run_test(const ExperimentConfig& config, RngStream& rng, std::span<const intervals::Interval> intervals_by_x) {
  const TestSpec& test = config.test;
  switch (test.kind) {
    case TestKind::Venkatraman:
    case TestKind::BootstrapAuc: {
      const auto& params = std::get<scenarios::RocScenarioParams>(config.scenario);
      const auto data = scenarios::generate_roc_dataset(params, rng);
      if (test.kind == TestKind::Venkatraman) return roc::venkatraman_test(data, config.n_permutations, rng).outcome();
      return roc::bootstrap_auc_difference_test(data, config.n_boot, rng);
    }
    case TestKind::WeightedLogrank:
    case TestKind::MedianComparison: {
      const auto& params = std::get<scenarios::SurvivalScenarioParams>(config.scenario);
      const auto data = scenarios::generate_survival_dataset(params, rng);
      if (test.kind == TestKind::WeightedLogrank) return survival::weighted_logrank(data, test.scheme).outcome();
      return median_comparison(data, test.scheme);
    }
    case TestKind::CiDuality: {
      const auto& params = std::get<scenarios::BinomialScenarioParams>(config.scenario);
      const std::uint32_t x = scenarios::draw_binomial(params, rng);
      const auto ci = intervals_by_x.empty() ? intervals::estimate(test.estimator, x, params.n, config.alpha)
                                             : intervals_by_x[x];
      TestOutcome out;
      out.statistic = static_cast<double>(x) / params.n;
      const auto decision = intervals::ci_test_duality(ci, params.theta0);
      // Encode the interval decision as a p-value on the same scale.
      out.p_value = decision == DirectionalDecision::FailToReject ? 1.0 : 0.0;
      out.observed_direction = decision == DirectionalDecision::ConcludeGreater ? std::optional(Direction::Greater)
                               : decision == DirectionalDecision::ConcludeLess  ? std::optional(Direction::Less)
                                                                                : std::nullopt;
      return out;
    }
    case TestKind::SignRule: {
      const auto& params = std::get<SingleObservationParams>(config.scenario);
      return scenarios::single_observation_draw(params.delta, rng);
    }
  }
  throw ConfigError("unknown test");
}

ReplicationRecord replicate(const ExperimentConfig& config, std::uint64_t rep,
                            std::span<const intervals::Interval> intervals_by_x) {
  RngStream rng = rng_stream(config.master_seed, rep);
  const TestOutcome outcome = run_test(config, rng, intervals_by_x);
  ReplicationRecord record;
  record.rep = rep;
  record.statistic = outcome.statistic;
  record.p_value = outcome.p_value;
  record.decision = decide(outcome, config.alpha);
  record.true_state = config.truth();
  return record;
}

}  // namespace

ReplicationRecord run_replication(const ExperimentConfig& config, std::uint64_t rep) {
  return replicate(config, rep, {});
}

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, config.n_reps));

  const auto start = std::chrono::steady_clock::now();
  // Interval estimators are deterministic in x, so each x is solved once.
  std::vector<intervals::Interval> intervals_by_x;
  if (config.test.kind == TestKind::CiDuality)
    intervals_by_x = intervals::interval_table(intervals::estimator_fn(config.test.estimator),
                                               std::get<scenarios::BinomialScenarioParams>(config.scenario).n,
                                               config.alpha);
  std::vector<ReplicationRecord> records(config.n_reps);
  std::atomic<std::uint64_t> next{0};
  constexpr std::uint64_t kChunk = 8;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t begin = next.fetch_add(kChunk);
      if (begin >= config.n_reps) return;
      const std::uint64_t end = std::min(config.n_reps, begin + kChunk);
      for (std::uint64_t rep = begin; rep < end; ++rep) records[rep] = replicate(config, rep, intervals_by_x);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  ExperimentResult result;
  result.config = config;
  result.decomposition = ErrorDecomposition(config.truth());
  for (const auto& r : records) result.decomposition.add(r.decision);
  if (config.keep_records) result.records = std::move(records);
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.reps_per_second = result.wall_seconds > 0 ? static_cast<double>(config.n_reps) / result.wall_seconds : 0.0;
  result.threads = threads;
  return result;
}

double CiAuditTable::worst_alpha_l() const {
  double w = 0.0;
  for (const auto& r : rows) w = std::max(w, r.alpha_l_realized);
  return w;
}

double CiAuditTable::worst_alpha_u() const {
  double w = 0.0;
  for (const auto& r : rows) w = std::max(w, r.alpha_u_realized);
  return w;
}

double CiAuditTable::worst_total() const {
  double w = 0.0;
  for (const auto& r : rows) w = std::max(w, r.alpha_l_realized + r.alpha_u_realized);
  return w;
}

double CiAuditTable::mean_width() const {
  if (rows.empty()) return 0.0;
  double s = 0.0;
  for (const auto& r : rows) s += r.expected_width;
  return s / static_cast<double>(rows.size());
}

CiAuditTable run_ci_audit_sweep(intervals::Estimator estimator, std::uint32_t n, double alpha,
                                std::span<const double> p_grid) {
  if (p_grid.empty()) throw ConfigError("p grid must not be empty");
  CiAuditTable table;
  table.estimator = estimator;
  table.n = n;
  table.alpha = alpha;
  const auto by_x = intervals::interval_table(intervals::estimator_fn(estimator), n, alpha);
  for (double p : p_grid) table.rows.push_back(intervals::exact_audit(by_x, p));
  return table;
}

}  // namespace dirstat::harness
