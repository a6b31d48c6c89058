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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dirstat/roc.hpp"
#include "support.hpp"

using namespace dirstat;
using namespace dirstat::roc;

namespace {

// Pair counting: wins + ties / 2 over n_pos * n_neg.
double mann_whitney(const std::vector<double>& pos, const std::vector<double>& neg) {
  double s = 0;
  for (double p : pos)
    for (double q : neg) s += p > q ? 1.0 : (p == q ? 0.5 : 0.0);
  return s / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

// Largest positive count among thresholds whose negative count is <= j.
std::vector<int> brute_step_tpr(const std::vector<double>& values, const std::vector<bool>& positive, int n_neg) {
  std::vector<double> thresholds(values);
  std::vector<int> out(n_neg + 1, 0);
  for (int j = 0; j <= n_neg; ++j) {
    int best = 0;
    for (double t : thresholds) {
      int np = 0, nn = 0;
      for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] >= t) (positive[i] ? np : nn)++;
      if (nn <= j) best = std::max(best, np);
    }
    out[j] = best;
  }
  return out;
}

double brute_statistic(const std::vector<double>& x, const std::vector<double>& y, const std::vector<bool>& positive) {
  int n_neg = 0, n_pos = 0;
  for (bool p : positive) (p ? n_pos : n_neg)++;
  const auto tx = brute_step_tpr(x, positive, n_neg), ty = brute_step_tpr(y, positive, n_neg);
  double s = 0;
  for (int j = 1; j < n_neg; ++j) s += std::abs(tx[j] - ty[j]);
  return s / (static_cast<double>(n_neg) * n_pos);
}

std::vector<double> brute_midranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (double w : v) {
      less += w < v[i];
      equal += w == v[i];
    }
    r[i] = less + (equal + 1) / 2.0;
  }
  return r;
}

PairedDiagnosticDataset random_dataset(testgen::Gen& g, int n_pos, int n_neg, int levels) {
  std::vector<Subject> s;
  for (int i = 0; i < n_pos + n_neg; ++i)
    s.push_back({i < n_pos, static_cast<double>(g.integer(0, levels)), static_cast<double>(g.integer(0, levels))});
  return PairedDiagnosticDataset(std::move(s));
}

}  // namespace

TEST_CASE("perfect separation") {
  const std::vector<double> pos{2, 3}, neg{0, 1};
  const auto c = empirical_roc(pos, neg);
  const auto pts = c.points();
  REQUIRE(pts.size() == 5);
  const std::vector<std::pair<double, double>> expected{{0, 0}, {0, 0.5}, {0, 1}, {0.5, 1}, {1, 1}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i].fpr == expected[i].first);
    CHECK(pts[i].tpr == expected[i].second);
  }
  CHECK(auc(c) == 1.0);
}

TEST_CASE("reversed separation and a mixed case") {
  CHECK(auc(empirical_roc(std::vector<double>{0, 1}, std::vector<double>{2, 3})) == 0.0);
  CHECK(auc(empirical_roc(std::vector<double>{1, 3}, std::vector<double>{2, 0})) == 0.75);
}

TEST_CASE("hand-built curves") {
  CHECK(auc(RocCurve({{0, 0}, {1, 1}}, 1, 1)) == 0.5);
  CHECK(auc(RocCurve({{0, 0}, {0, 1}, {1, 1}}, 1, 1)) == 1.0);
  CHECK_THROWS_AS(RocCurve({{0, 0}, {1, 0}}, 1, 1), Error);
  CHECK_THROWS_AS(RocCurve({{0, 1}, {1, 1}}, 1, 1), Error);
  CHECK_THROWS_AS(RocCurve({{0, 0}, {1, 1}, {0, 1}, {1, 1}}, 1, 1), Error);
}

TEST_CASE("step lookup is right-continuous") {
  const auto c = empirical_roc(std::vector<double>{2, 3}, std::vector<double>{0, 1});
  CHECK(c.tpr_at(0.0) == 1.0);
  const auto d = empirical_roc(std::vector<double>{1, 3}, std::vector<double>{2, 0});
  CHECK(d.tpr_at(0.0) == 0.5);
  CHECK(d.tpr_at(0.49) == 0.5);
  CHECK(d.tpr_at(0.5) == 1.0);
}

TEST_CASE("empty or non-finite classes are degenerate") {
  const std::vector<double> empty, one{1.0}, bad{NAN};
  CHECK_THROWS_WITH_AS(empirical_roc(empty, one), doctest::Contains("degenerate class"), DegenerateData);
  CHECK_THROWS_AS(empirical_roc(one, bad), DegenerateData);
  CHECK_THROWS_AS(PairedDiagnosticDataset({{true, 1, 1}, {true, 2, 2}}), DegenerateData);
  CHECK_THROWS_AS(PairedDiagnosticDataset({{true, 1, 1}, {false, INFINITY, 2}}), DegenerateData);
}

TEST_CASE("AUC equals Mann-Whitney on random tied data") {
  testgen::Gen g(21);
  for (int i = 0; i < 500; ++i) {
    const auto pos = g.tied_scores(g.integer(1, 20), g.integer(1, 6));
    const auto neg = g.tied_scores(g.integer(1, 20), g.integer(1, 6));
    CHECK(auc(empirical_roc(pos, neg)) == mann_whitney(pos, neg));
  }
}

TEST_CASE("ROC is invariant under strictly increasing transforms") {
  testgen::Gen g(22);
  for (int i = 0; i < 100; ++i) {
    auto pos = g.tied_scores(g.integer(1, 12), 5), neg = g.tied_scores(g.integer(1, 12), 5);
    const auto before = empirical_roc(pos, neg);
    for (auto* v : {&pos, &neg})
      for (auto& s : *v) s = std::exp(3 * s) - 7;
    const auto after = empirical_roc(pos, neg);
    REQUIRE(before.vertices().size() == after.vertices().size());
    for (std::size_t k = 0; k < before.vertices().size(); ++k) {
      CHECK(before.vertices()[k].neg == after.vertices()[k].neg);
      CHECK(before.vertices()[k].pos == after.vertices()[k].pos);
    }
  }
}

TEST_CASE("doubled midranks") {
  const std::vector<double> v{3.0, 1.0, 3.0, 2.0, 3.0};
  const auto r = doubled_midranks(v);
  const auto oracle = brute_midranks(v);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(r[i] == 2 * oracle[i]);
  CHECK(r == std::vector<std::uint32_t>{8, 2, 8, 4, 8});
}

TEST_CASE("Venkatraman statistic matches a brute-force evaluation") {
  testgen::Gen g(31);
  for (int iter = 0; iter < 60; ++iter) {
    const auto data = random_dataset(g, g.integer(1, 9), g.integer(1, 9), g.integer(1, 8));
    std::vector<double> x, y;
    std::vector<bool> pos;
    for (const auto& s : data.subjects()) {
      x.push_back(s.marker_x);
      y.push_back(s.marker_y);
      pos.push_back(s.positive);
    }
    const auto r = venkatraman_test(data, 20, rng_stream(1, iter));
    CHECK(r.e_obs == doctest::Approx(brute_statistic(x, y, pos)).epsilon(1e-12));
    CHECK(r.auc_x == doctest::Approx(mann_whitney(data.scores(true, true), data.scores(false, true))));
    CHECK(r.auc_y == doctest::Approx(mann_whitney(data.scores(true, false), data.scores(false, false))));
  }
}

TEST_CASE("Venkatraman p-value matches a re-ranking oracle") {
  // The oracle swaps each subject's midrank pair by the documented coin bits,
  // re-ranks both columns from scratch and evaluates the statistic by brute force.
  testgen::Gen g(32);
  for (int iter = 0; iter < 15; ++iter) {
    const auto data = random_dataset(g, g.integer(2, 8), g.integer(2, 8), 4);
    std::vector<double> x, y;
    std::vector<bool> pos;
    for (const auto& s : data.subjects()) {
      x.push_back(s.marker_x);
      y.push_back(s.marker_y);
      pos.push_back(s.positive);
    }
    const auto rx = brute_midranks(x), ry = brute_midranks(y);
    const double observed = brute_statistic(rx, ry, pos);
    const auto rng = rng_stream(77, iter);
    const int B = 50;
    int at_least = 0;
    for (int b = 0; b < B; ++b) {
      auto coins = rng.substream(b);
      std::uint64_t bits = 0;
      std::vector<double> px(x.size()), py(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (i % 64 == 0) bits = coins();
        const bool swap = (bits >> (i % 64)) & 1u;
        px[i] = swap ? ry[i] : rx[i];
        py[i] = swap ? rx[i] : ry[i];
      }
      at_least += brute_statistic(brute_midranks(px), brute_midranks(py), pos) >= observed - 1e-12;
    }
    const auto r = venkatraman_test(data, B, rng);
    CHECK(r.p_value == doctest::Approx((1.0 + at_least) / (B + 1.0)));
  }
}

TEST_CASE("identical markers give e = 0 and p = 1") {
  testgen::Gen g(4);
  std::vector<Subject> s;
  for (int i = 0; i < 40; ++i) {
    const double v = g.normal();
    s.push_back({i < 15, v, v});
  }
  const PairedDiagnosticDataset data(std::move(s));
  const auto r = venkatraman_test(data, 199, rng_stream(1, 2));
  CHECK(r.e_obs == 0.0);
  CHECK(r.p_value == 1.0);
  CHECK(!r.observed_direction);
  CHECK(naive_auc_direction(r, 0.05) == DirectionalDecision::FailToReject);

  const auto boot = bootstrap_auc_difference_test(data, 200, rng_stream(1, 2));
  CHECK(boot.statistic == 0.0);
  CHECK(decide(boot, 0.5) == DirectionalDecision::FailToReject);
}

TEST_CASE("Venkatraman is deterministic and symmetric in the markers") {
  testgen::Gen g(5);
  std::vector<Subject> s;
  for (int i = 0; i < 60; ++i) s.push_back({i < 30, g.normal() + (i < 30), g.normal() * 2 + (i < 30)});
  const PairedDiagnosticDataset data(std::move(s));
  const auto a = venkatraman_test(data, 299, rng_stream(8, 1));
  const auto b = venkatraman_test(data, 299, rng_stream(8, 1));
  CHECK(a.p_value == b.p_value);
  CHECK(a.e_obs == b.e_obs);
  const auto sw = venkatraman_test(data.swapped_markers(), 299, rng_stream(8, 1));
  CHECK(sw.e_obs == a.e_obs);
  // Swapping the columns complements every coin, which maps the permutation
  // distribution onto itself sample by sample.
  CHECK(sw.p_value == a.p_value);
  REQUIRE(a.observed_direction);
  CHECK(sw.observed_direction == -*a.observed_direction);
  CHECK(sw.auc_x == a.auc_y);
}

TEST_CASE("naive direction reads the AUC sign") {
  VenkatramanResult r;
  r.p_value = 0.03;
  r.auc_x = 0.74;
  r.auc_y = 0.78;
  r.observed_direction = Direction::Less;
  CHECK(naive_auc_direction(r, 0.05) == DirectionalDecision::ConcludeLess);
  r.p_value = 0.30;
  CHECK(naive_auc_direction(r, 0.05) == DirectionalDecision::FailToReject);
  r.p_value = 0.001;
  r.auc_x = 0.79;
  r.auc_y = 0.78;
  r.observed_direction = Direction::Greater;
  CHECK(naive_auc_direction(r, 0.05) == DirectionalDecision::ConcludeGreater);
}

TEST_CASE("bootstrap detects an extreme AUC gap") {
  auto rng = rng_stream(12, 0);
  std::vector<Subject> s;
  for (int i = 0; i < 200; ++i) {
    const bool positive = i < 100;
    s.push_back({positive, positive ? 10.0 + rng.normal() : rng.normal(), rng.normal()});
  }
  const PairedDiagnosticDataset data(std::move(s));
  const auto out = bootstrap_auc_difference_test(data, 1000, rng_stream(12, 1));
  CHECK(out.statistic > 0.3);
  CHECK(decide(out, 0.05) == DirectionalDecision::ConcludeGreater);
  CHECK_THROWS_AS(bootstrap_auc_difference_test(data, 99, rng_stream(1, 1)), ConfigError);
  CHECK_THROWS_AS(venkatraman_test(data, 0, rng_stream(1, 1)), ConfigError);
}

TEST_CASE("bootstrap p-value matches a resampling oracle") {
  testgen::Gen g(6);
  const auto data = random_dataset(g, 7, 9, 5);
  const auto rng = rng_stream(4, 4);
  const int B = 150;
  std::vector<Subject> pos, neg;
  for (const auto& s : data.subjects()) (s.positive ? pos : neg).push_back(s);
  int le = 0, ge = 0;
  for (int b = 0; b < B; ++b) {
    auto draw = rng.substream(b);
    std::vector<double> px, py, nx, ny;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const auto& s = pos[draw.below(pos.size())];
      px.push_back(s.marker_x);
      py.push_back(s.marker_y);
    }
    for (std::size_t i = 0; i < neg.size(); ++i) {
      const auto& s = neg[draw.below(neg.size())];
      nx.push_back(s.marker_x);
      ny.push_back(s.marker_y);
    }
    const double d = mann_whitney(px, nx) - mann_whitney(py, ny);
    le += d <= 1e-15;
    ge += d >= -1e-15;
  }
  const auto out = bootstrap_auc_difference_test(data, B, rng);
  CHECK(out.p_value == doctest::Approx(std::min(1.0, 2.0 * std::min(le, ge) / B)));
}
