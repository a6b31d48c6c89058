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

#include "dirstat/roc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace dirstat::roc {

PairedDiagnosticDataset::PairedDiagnosticDataset(std::vector<Subject> subjects)
    : subjects_(std::move(subjects)) {
  for (const auto& s : subjects_) {
    if (!std::isfinite(s.marker_x) || !std::isfinite(s.marker_y))
      throw DegenerateData("degenerate class: non-finite marker value");
    n_pos_ += s.positive ? 1 : 0;
  }
  if (n_pos_ == 0 || n_pos_ == subjects_.size())
    throw DegenerateData("degenerate class: need at least one positive and one negative subject");
}

std::vector<double> PairedDiagnosticDataset::scores(bool positive, bool marker_x) const {
  std::vector<double> out;
  for (const auto& s : subjects_)
    if (s.positive == positive) out.push_back(marker_x ? s.marker_x : s.marker_y);
  return out;
}

PairedDiagnosticDataset PairedDiagnosticDataset::swapped_markers() const {
  std::vector<Subject> swapped(subjects_.begin(), subjects_.end());
  for (auto& s : swapped) std::swap(s.marker_x, s.marker_y);
  return PairedDiagnosticDataset(std::move(swapped));
}

RocCurve::RocCurve(std::vector<Vertex> vertices, std::uint32_t n_neg, std::uint32_t n_pos)
    : vertices_(std::move(vertices)), n_neg_(n_neg), n_pos_(n_pos) {
  if (n_neg == 0 || n_pos == 0) throw DegenerateData("degenerate class");
  if (vertices_.empty() || vertices_.front().neg != 0 || vertices_.front().pos != 0)
    throw Error("ROC curve must start at (0,0)");
  if (vertices_.back().neg != n_neg || vertices_.back().pos != n_pos)
    throw Error("ROC curve must end at (1,1)");
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    if (vertices_[i].neg < vertices_[i - 1].neg || vertices_[i].pos < vertices_[i - 1].pos)
      throw Error("ROC curve coordinates must be non-decreasing");
}

std::vector<RocPoint> RocCurve::points() const {
  std::vector<RocPoint> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_)
    out.push_back({static_cast<double>(v.neg) / n_neg_, static_cast<double>(v.pos) / n_pos_});
  return out;
}

double RocCurve::tpr_at(double fpr) const {
  std::uint32_t best = 0;
  for (const auto& v : vertices_)
    if (static_cast<double>(v.neg) / n_neg_ <= fpr) best = std::max(best, v.pos);
  return static_cast<double>(best) / n_pos_;
}

std::uint64_t RocCurve::doubled_area_counts() const noexcept {
  std::uint64_t area = 0;
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    const std::uint64_t dx = vertices_[i].neg - vertices_[i - 1].neg;
    area += dx * (static_cast<std::uint64_t>(vertices_[i].pos) + vertices_[i - 1].pos);
  }
  return area;
}

RocCurve empirical_roc(std::span<const double> pos_scores, std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty()) throw DegenerateData("degenerate class");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(pos_scores.begin(), pos_scores.end(), finite) ||
      !std::all_of(neg_scores.begin(), neg_scores.end(), finite))
    throw DegenerateData("degenerate class: non-finite score");

  std::vector<double> pos(pos_scores.begin(), pos_scores.end());
  std::vector<double> neg(neg_scores.begin(), neg_scores.end());
  std::sort(pos.begin(), pos.end(), std::greater<>());
  std::sort(neg.begin(), neg.end(), std::greater<>());

  std::vector<RocCurve::Vertex> vertices{{0, 0}};
  std::size_t ip = 0, in = 0;
  while (ip < pos.size() || in < neg.size()) {
    double t = -INFINITY;
    if (ip < pos.size()) t = pos[ip];
    if (in < neg.size()) t = std::max(t, neg[in]);
    while (ip < pos.size() && pos[ip] == t) ++ip;
    while (in < neg.size() && neg[in] == t) ++in;
    vertices.push_back({static_cast<std::uint32_t>(in), static_cast<std::uint32_t>(ip)});
  }
  return RocCurve(std::move(vertices), static_cast<std::uint32_t>(neg.size()),
                  static_cast<std::uint32_t>(pos.size()));
}

double auc(const RocCurve& curve) noexcept {
  return static_cast<double>(curve.doubled_area_counts()) /
         (2.0 * static_cast<double>(curve.n_negative()) * static_cast<double>(curve.n_positive()));
}

std::vector<std::uint32_t> doubled_midranks(std::span<const double> values) {
  std::vector<std::uint32_t> order(values.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<std::uint32_t> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 hold 1-based ranks i+1..j; twice their mean is i+j+1.
    const auto r = static_cast<std::uint32_t>(i + j + 1);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
    i = j;
  }
  return ranks;
}

namespace {

// Rank-domain kernels. Ranks are doubled midranks in [2, 2N], so class counts
// per rank value fit in flat buckets and each evaluation is O(N).
class RankKernel {
 public:
  RankKernel(std::span<const std::uint8_t> positive, std::uint32_t n_neg)
      : positive_(positive),
        n_neg_(n_neg),
        max_rank_(static_cast<std::uint32_t>(2 * positive.size())),
        pos_cnt_(max_rank_ + 1),
        neg_cnt_(max_rank_ + 1) {}

  // Positive counts at FPR steps j/G, j = 0..G, with right-continuous step
  // semantics (largest TPR among thresholds with #neg >= t not exceeding j).
  void step_tpr(std::span<const std::uint32_t> ranks, std::vector<std::int64_t>& out) {
    fill_buckets(ranks);
    out.assign(n_neg_ + 1, -1);
    out[0] = 0;
    std::int64_t pos_cum = 0;
    std::uint32_t neg_cum = 0;
    for (std::uint32_t v = max_rank_; v >= 1; --v) {
      if (pos_cnt_[v] == 0 && neg_cnt_[v] == 0) continue;
      pos_cum += pos_cnt_[v];
      neg_cum += neg_cnt_[v];
      out[neg_cum] = pos_cum;
    }
    for (std::uint32_t j = 1; j <= n_neg_; ++j) out[j] = std::max(out[j], out[j - 1]);
  }

  // 2 * (#pos > neg pairs) + #tied pairs, over the multiset of subjects given
  // by `index` (defaults to everyone).
  std::int64_t doubled_wins(std::span<const std::uint32_t> ranks) {
    fill_buckets(ranks);
    return wins_from_buckets();
  }

  std::int64_t doubled_wins(std::span<const std::uint32_t> ranks, std::span<const std::uint32_t> index) {
    std::fill(pos_cnt_.begin(), pos_cnt_.end(), 0);
    std::fill(neg_cnt_.begin(), neg_cnt_.end(), 0);
    for (auto i : index) (positive_[i] ? pos_cnt_ : neg_cnt_)[ranks[i]]++;
    return wins_from_buckets();
  }

 private:
  void fill_buckets(std::span<const std::uint32_t> ranks) {
    std::fill(pos_cnt_.begin(), pos_cnt_.end(), 0);
    std::fill(neg_cnt_.begin(), neg_cnt_.end(), 0);
    for (std::size_t i = 0; i < ranks.size(); ++i) (positive_[i] ? pos_cnt_ : neg_cnt_)[ranks[i]]++;
  }

  std::int64_t wins_from_buckets() const {
    std::int64_t wins = 0, neg_below = 0;
    for (std::uint32_t v = 1; v <= max_rank_; ++v) {
      wins += static_cast<std::int64_t>(pos_cnt_[v]) * (2 * neg_below + neg_cnt_[v]);
      neg_below += neg_cnt_[v];
    }
    return wins;
  }

  std::span<const std::uint8_t> positive_;
  std::uint32_t n_neg_;
  std::uint32_t max_rank_;
  std::vector<std::uint32_t> pos_cnt_;
  std::vector<std::uint32_t> neg_cnt_;
};

std::int64_t abs_difference_sum(const std::vector<std::int64_t>& tx, const std::vector<std::int64_t>& ty) {
  std::int64_t s = 0;
  for (std::size_t j = 1; j + 1 < tx.size(); ++j) s += std::llabs(tx[j] - ty[j]);
  return s;
}

struct RankedPairs {
  std::vector<std::uint8_t> positive;
  std::vector<std::uint32_t> rank_x;
  std::vector<std::uint32_t> rank_y;
};

RankedPairs rank_pairs(const PairedDiagnosticDataset& data) {
  RankedPairs r;
  std::vector<double> x, y;
  for (const auto& s : data.subjects()) {
    r.positive.push_back(s.positive ? 1 : 0);
    x.push_back(s.marker_x);
    y.push_back(s.marker_y);
  }
  r.rank_x = doubled_midranks(x);
  r.rank_y = doubled_midranks(y);
  return r;
}

}  // namespace

TestOutcome VenkatramanResult::outcome() const {
  TestOutcome o;
  o.statistic = e_obs;
  o.p_value = p_value;
  o.observed_direction = observed_direction;
  o.permutations_used = n_permutations;
  return o;
}

VenkatramanResult venkatraman_test(const PairedDiagnosticDataset& data, std::uint64_t n_permutations,
                                   const RngStream& rng) {
  if (n_permutations < 1) throw ConfigError("n_permutations must be >= 1");
  if (data.n_positive() == 0 || data.n_negative() == 0) throw DegenerateData("degenerate class");

  const RankedPairs ranked = rank_pairs(data);
  const auto n = ranked.positive.size();
  const auto n_neg = static_cast<std::uint32_t>(data.n_negative());
  const auto n_pos = static_cast<std::uint32_t>(data.n_positive());
  RankKernel kernel(ranked.positive, n_neg);

  VenkatramanResult result;
  result.n_permutations = n_permutations;
  const double pairs = 2.0 * n_pos * static_cast<double>(n_neg);
  const std::int64_t wins_x = kernel.doubled_wins(ranked.rank_x);
  const std::int64_t wins_y = kernel.doubled_wins(ranked.rank_y);
  result.auc_x = static_cast<double>(wins_x) / pairs;
  result.auc_y = static_cast<double>(wins_y) / pairs;
  result.observed_direction = direction_of(static_cast<double>(wins_x - wins_y));

  std::vector<std::int64_t> tx, ty;
  kernel.step_tpr(ranked.rank_x, tx);
  kernel.step_tpr(ranked.rank_y, ty);
  const std::int64_t observed = abs_difference_sum(tx, ty);
  result.e_obs = static_cast<double>(observed) / (static_cast<double>(n_neg) * n_pos);

  std::vector<std::uint32_t> px(n), py(n);
  std::uint64_t at_least = 0;
  for (std::uint64_t b = 0; b < n_permutations; ++b) {
    RngStream coins = rng.substream(b);
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i % 64 == 0) bits = coins();
      const bool swap = (bits >> (i % 64)) & 1u;
      px[i] = swap ? ranked.rank_y[i] : ranked.rank_x[i];
      py[i] = swap ? ranked.rank_x[i] : ranked.rank_y[i];
    }
    kernel.step_tpr(px, tx);
    kernel.step_tpr(py, ty);
    if (abs_difference_sum(tx, ty) >= observed) ++at_least;
  }
  result.p_value = static_cast<double>(1 + at_least) / static_cast<double>(n_permutations + 1);
  return result;
}

DirectionalDecision naive_auc_direction(const VenkatramanResult& result, double alpha) {
  return decide(result.p_value, result.observed_direction, alpha);
}

TestOutcome bootstrap_auc_difference_test(const PairedDiagnosticDataset& data, std::uint64_t n_boot,
                                          const RngStream& rng) {
  if (n_boot < 100) throw ConfigError("n_boot must be >= 100");
  if (data.n_positive() == 0 || data.n_negative() == 0) throw DegenerateData("degenerate class");

  const RankedPairs ranked = rank_pairs(data);
  std::vector<std::uint32_t> pos_idx, neg_idx;
  for (std::uint32_t i = 0; i < ranked.positive.size(); ++i)
    (ranked.positive[i] ? pos_idx : neg_idx).push_back(i);
  RankKernel kernel(ranked.positive, static_cast<std::uint32_t>(neg_idx.size()));

  const double pairs = 2.0 * static_cast<double>(pos_idx.size()) * static_cast<double>(neg_idx.size());
  const std::int64_t observed = kernel.doubled_wins(ranked.rank_x) - kernel.doubled_wins(ranked.rank_y);

  std::vector<std::uint32_t> sample(ranked.positive.size());
  std::uint64_t at_most_zero = 0, at_least_zero = 0;
  for (std::uint64_t b = 0; b < n_boot; ++b) {
    RngStream draw = rng.substream(b);
    std::size_t k = 0;
    for (std::size_t i = 0; i < pos_idx.size(); ++i) sample[k++] = pos_idx[draw.below(pos_idx.size())];
    for (std::size_t i = 0; i < neg_idx.size(); ++i) sample[k++] = neg_idx[draw.below(neg_idx.size())];
    const std::int64_t d = kernel.doubled_wins(ranked.rank_x, sample) - kernel.doubled_wins(ranked.rank_y, sample);
    if (d <= 0) ++at_most_zero;
    if (d >= 0) ++at_least_zero;
  }

  TestOutcome out;
  out.statistic = static_cast<double>(observed) / pairs;
  const double tail = static_cast<double>(std::min(at_most_zero, at_least_zero)) / static_cast<double>(n_boot);
  out.p_value = std::min(1.0, 2.0 * tail);
  out.observed_direction = direction_of(static_cast<double>(observed));
  out.permutations_used = n_boot;
  return out;
}

}  // namespace dirstat::roc
