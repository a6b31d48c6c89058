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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dirstat/core.hpp"
#include "dirstat/intervals.hpp"
#include "dirstat/scenarios.hpp"
#include "dirstat/survival.hpp"

namespace dirstat::harness {

struct SingleObservationParams {
  double delta = 0.0;
  TrueState truth() const { return TrueState::from_difference(delta); }
  friend bool operator==(const SingleObservationParams&, const SingleObservationParams&) = default;
};

using ScenarioSpec = std::variant<scenarios::RocScenarioParams, scenarios::SurvivalScenarioParams,
                                  SingleObservationParams, scenarios::BinomialScenarioParams>;

enum class TestKind : std::uint8_t {
  Venkatraman,      // ROC curve permutation test read as an AUC comparison
  BootstrapAuc,     // bootstrap of the AUC difference
  WeightedLogrank,  // direction from the sign of Z
  MedianComparison, // significance from a weighted log-rank, direction from the median difference
  CiDuality,        // interval excludes theta0
  SignRule,         // single observation: reject always, direction from the sign
};

struct TestSpec {
  TestKind kind = TestKind::Venkatraman;
  /// WeightedLogrank and MedianComparison.
  survival::WeightScheme scheme = survival::WeightScheme::gehan_breslow();
  /// CiDuality.
  intervals::Estimator estimator = intervals::Estimator::CpEqual;

  std::string name() const;
  friend bool operator==(const TestSpec&, const TestSpec&) = default;
};

std::string_view to_string(TestKind k) noexcept;
TestKind parse_test_kind(std::string_view s);

struct ExperimentConfig {
  ScenarioSpec scenario;
  TestSpec test;
  double alpha = 0.05;
  std::uint64_t n_reps = 1000;
  std::uint64_t master_seed = 42;
  std::uint64_t n_permutations = 999;
  std::uint64_t n_boot = 1000;
  /// Keep one ReplicationRecord per replication.
  bool keep_records = false;

  /// Throws ConfigError on n_reps = 0, alpha outside (0,1), or a test that
  /// does not apply to the scenario.
  void validate() const;
  TrueState truth() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct ReplicationRecord {
  std::uint64_t rep = 0;
  /// NaN when the test has no statistic for this replication (e.g. a median
  /// that was never reached).
  double statistic = 0.0;
  double p_value = 1.0;
  DirectionalDecision decision = DirectionalDecision::FailToReject;
  TrueState true_state = TrueState::null();

  bool operator==(const ReplicationRecord& o) const;
};

struct ExperimentResult {
  ExperimentConfig config;
  ErrorDecomposition decomposition{TrueState::null()};
  std::vector<ReplicationRecord> records;
  // Timing metadata; not part of the statistical identity of a run.
  double wall_seconds = 0.0;
  double reps_per_second = 0.0;
  unsigned threads = 1;

  /// Equality over statistical fields only.
  bool same_statistics(const ExperimentResult& other) const;
  friend bool operator==(const ExperimentResult&, const ExperimentResult&) = default;
};

/// Worker count from DIRSTAT_THREADS, else the hardware concurrency.
unsigned default_thread_count();

/// One replication: data from rng_stream(seed, rep), resampling from its
/// substreams. Pure; exposed for tests.
ReplicationRecord run_replication(const ExperimentConfig& config, std::uint64_t rep);

/// Replications are distributed over `threads` workers (0 = default). The
/// decomposition and records do not depend on the worker count.
ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads = 0);

struct CiAuditTable {
  intervals::Estimator estimator = intervals::Estimator::CpEqual;
  std::uint32_t n = 0;
  double alpha = 0.05;
  std::vector<intervals::IntervalAudit> rows;

  double worst_alpha_l() const;
  double worst_alpha_u() const;
  /// max over the grid of alpha_l + alpha_u
  double worst_total() const;
  double mean_width() const;
};

CiAuditTable run_ci_audit_sweep(intervals::Estimator estimator, std::uint32_t n, double alpha,
                                std::span<const double> p_grid);

}  // namespace dirstat::harness
