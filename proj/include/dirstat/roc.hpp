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
#include <optional>
#include <span>
#include <vector>

#include "dirstat/core.hpp"
#include "dirstat/rng.hpp"

namespace dirstat::roc {

/// One subject measured by two markers. Higher marker values indicate the
/// positive class.
struct Subject {
  bool positive = false;
  double marker_x = 0.0;
  double marker_y = 0.0;
};

/// Both markers observed on the same subjects (paired design).
class PairedDiagnosticDataset {
 public:
  PairedDiagnosticDataset() = default;
  /// Throws DegenerateData when a class is empty or a marker is not finite.
  explicit PairedDiagnosticDataset(std::vector<Subject> subjects);

  std::span<const Subject> subjects() const noexcept { return subjects_; }
  std::size_t size() const noexcept { return subjects_.size(); }
  std::size_t n_positive() const noexcept { return n_pos_; }
  std::size_t n_negative() const noexcept { return subjects_.size() - n_pos_; }

  /// Marker values split by class.
  std::vector<double> scores(bool positive, bool marker_x) const;
  /// Same subjects with the two markers exchanged.
  PairedDiagnosticDataset swapped_markers() const;

 private:
  std::vector<Subject> subjects_;
  std::size_t n_pos_ = 0;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

/// Empirical ROC step curve. Vertices are stored as exact counts
/// (negatives, positives) over the class sizes so that the area is computed
/// without rounding; the double coordinates are derived views.
class RocCurve {
 public:
  struct Vertex {
    std::uint32_t neg = 0;
    std::uint32_t pos = 0;
  };

  /// Throws Error unless the vertices run from (0,0) to (n_neg,n_pos) and are
  /// non-decreasing in both coordinates.
  RocCurve(std::vector<Vertex> vertices, std::uint32_t n_neg, std::uint32_t n_pos);

  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  std::vector<RocPoint> points() const;
  std::uint32_t n_negative() const noexcept { return n_neg_; }
  std::uint32_t n_positive() const noexcept { return n_pos_; }

  /// Right-continuous step value: the largest TPR among vertices with FPR <= fpr.
  double tpr_at(double fpr) const;

  /// Twice the trapezoidal area in count units; auc = value / (2 n_neg n_pos).
  std::uint64_t doubled_area_counts() const noexcept;

 private:
  std::vector<Vertex> vertices_;
  std::uint32_t n_neg_;
  std::uint32_t n_pos_;
};

/// ROC over every pooled threshold t: ((#neg >= t)/n_neg, (#pos >= t)/n_pos).
/// Throws DegenerateData("degenerate class") on an empty list or non-finite value.
RocCurve empirical_roc(std::span<const double> pos_scores, std::span<const double> neg_scores);

/// Trapezoidal area under the curve, in [0,1]. Ties between classes produce
/// diagonal segments, so the result equals the Mann-Whitney estimate with
/// ties counted one half.
double auc(const RocCurve& curve) noexcept;

struct VenkatramanResult {
  /// (1/G) sum_{j=1}^{G-1} |TPR_x(j/G) - TPR_y(j/G)|, G = number of negatives.
  double e_obs = 0.0;
  double p_value = 1.0;
  double auc_x = 0.0;
  double auc_y = 0.0;
  /// Sign of auc_x - auc_y; absent when the AUCs are exactly equal.
  std::optional<Direction> observed_direction;
  std::uint64_t n_permutations = 0;

  TestOutcome outcome() const;
};

inline constexpr std::uint64_t kDefaultPermutations = 999;
inline constexpr std::uint64_t kDefaultBootstrap = 1000;

/// Paired permutation test of ROC curve identity.
///
/// Markers are replaced by within-marker midranks. Each permutation swaps the
/// (rank_x, rank_y) pair of every subject independently with probability 1/2;
/// the ROC of a column depends only on the ordering, so the swapped ranks are
/// evaluated directly (equivalent to re-ranking). Permutation b draws its coins
/// from `rng.substream(b)`, which makes the result independent of how the
/// permutation loop is scheduled. p = (1 + #{e* >= e_obs}) / (B + 1).
VenkatramanResult venkatraman_test(const PairedDiagnosticDataset& data, std::uint64_t n_permutations,
                                   const RngStream& rng);

/// Reads the curve comparison as if it compared AUCs. This is the
/// interpretation under audit, not a recommended use.
DirectionalDecision naive_auc_direction(const VenkatramanResult& result, double alpha);

/// Paired percentile bootstrap of auc_x - auc_y (subjects resampled with
/// replacement within each class). p = min(1, 2 min(P*(d <= 0), P*(d >= 0))).
/// Replicate b uses `rng.substream(b)`. Requires n_boot >= 100.
TestOutcome bootstrap_auc_difference_test(const PairedDiagnosticDataset& data, std::uint64_t n_boot,
                                          const RngStream& rng);

/// Doubled midranks (1-based midrank * 2) of `values`; ties share the mean rank.
std::vector<std::uint32_t> doubled_midranks(std::span<const double> values);

}  // namespace dirstat::roc
