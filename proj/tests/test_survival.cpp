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
#include <set>
#include <vector>

#include "dirstat/rng.hpp"
#include "dirstat/survival.hpp"
#include "support.hpp"

using namespace dirstat;
using namespace dirstat::survival;

namespace {

using Records = std::vector<SurvivalRecord>;

// Direct evaluation of the weighted log-rank sums from their definition.
struct Sums {
  double u = 0, var = 0;
};

Sums oracle_logrank(const Records& recs, const WeightScheme& scheme) {
  std::set<double> times;
  for (const auto& r : recs)
    if (r.event) times.insert(r.time);
  Sums s;
  double km = 1.0;  // pooled KM just before the current time
  for (double t : times) {
    double na = 0, n = 0, da = 0, d = 0;
    for (const auto& r : recs) {
      if (r.time >= t) {
        ++n;
        na += r.group == Group::A;
      }
      if (r.time == t && r.event) {
        ++d;
        da += r.group == Group::A;
      }
    }
    double w = 1;
    switch (scheme.kind()) {
      case WeightScheme::Kind::LogRank: w = 1; break;
      case WeightScheme::Kind::GehanBreslow: w = n; break;
      case WeightScheme::Kind::TaroneWare: w = std::sqrt(n); break;
      case WeightScheme::Kind::FlemingHarrington:
        w = std::pow(km, scheme.rho()) * std::pow(1 - km, scheme.gamma());
        break;
    }
    s.u += w * (da - d * na / n);
    if (n > 1) s.var += w * w * d * (na / n) * (1 - na / n) * (n - d) / (n - 1);
    km *= 1 - d / n;
  }
  return s;
}

Records random_records(testgen::Gen& g, int n, bool ties) {
  Records r;
  for (int i = 0; i < n; ++i) {
    const double t = ties ? g.integer(1, 8) : g.real(0.01, 10);
    r.push_back({t, g.integer(0, 3) > 0, i % 2 ? Group::A : Group::B});
  }
  return r;
}

const WeightScheme kSchemes[] = {WeightScheme::log_rank(), WeightScheme::gehan_breslow(), WeightScheme::tarone_ware(),
                                 WeightScheme::fleming_harrington(0, 1), WeightScheme::fleming_harrington(1, 0.5)};

}  // namespace

TEST_CASE("hand product-limit example") {
  const Records r{{1, true, Group::A}, {2, false, Group::A}, {3, true, Group::A}};
  const auto km = km_estimate(r);
  CHECK(km.times == std::vector<double>{1, 3});
  CHECK(km.at(0.5) == 1.0);
  CHECK(km.at(1.0) == doctest::Approx(2.0 / 3));
  CHECK(km.at(2.9) == doctest::Approx(2.0 / 3));
  CHECK(km.at(3.0) == 0.0);
  CHECK(km.at_risk == std::vector<std::uint32_t>{3, 1});
}

TEST_CASE("all censored stays at one and has no median") {
  const Records r{{1, false, Group::A}, {2, false, Group::A}};
  const auto km = km_estimate(r);
  CHECK(km.times.empty());
  CHECK(km.at(100) == 1.0);
  CHECK(!median_survival(km));
}

TEST_CASE("events precede censorings at tied times") {
  const Records r{{2, false, Group::A}, {2, true, Group::A}, {5, true, Group::A}};
  const auto km = km_estimate(r);
  CHECK(km.at(2) == doctest::Approx(2.0 / 3));
  CHECK(km.at_risk[1] == 1);
}

TEST_CASE("KM equals the empirical survivor function without censoring (exhaustive, n <= 6)") {
  for (int n = 1; n <= 6; ++n) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      Records r;
      for (int i = 0; i < n; ++i) r.push_back({i + 1.0, true, (mask >> i) & 1 ? Group::A : Group::B});
      for (auto group : {std::optional<Group>{}, std::optional<Group>{Group::A}}) {
        int m = 0;
        for (const auto& x : r) m += !group || x.group == *group;
        if (m == 0) {
          CHECK_THROWS_AS(km_estimate(r, group), DegenerateData);
          continue;
        }
        const auto km = km_estimate(r, group);
        for (double t = 0.5; t <= n + 0.5; t += 0.5) {
          int surv = 0;
          for (const auto& x : r)
            if ((!group || x.group == *group) && x.time > t) ++surv;
          CHECK(km.at(t) == doctest::Approx(static_cast<double>(surv) / m).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("KM curve invariants on random data") {
  testgen::Gen g(9);
  for (int i = 0; i < 200; ++i) {
    const auto r = random_records(g, g.integer(1, 40), g.coin());
    const auto km = km_estimate(r);
    double prev = 1.0;
    for (std::size_t k = 0; k < km.times.size(); ++k) {
      CHECK(km.survival[k] <= prev);
      CHECK(km.survival[k] >= 0.0);
      CHECK(km.events[k] > 0);
      if (k) CHECK(km.times[k] > km.times[k - 1]);
      prev = km.survival[k];
    }
  }
}

TEST_CASE("median survival") {
  KmCurve c;
  c.times = {3, 7, 9};
  c.survival = {0.6, 0.4, 0.1};
  c.at_risk = {10, 6, 4};
  c.events = {4, 2, 3};
  CHECK(median_survival(c) == 7.0);

  auto rng = rng_stream(2, 2);
  Records r;
  for (int i = 0; i < 10000; ++i) r.push_back({-std::log(rng.uniform_open()), true, Group::A});
  const auto m = median_survival(km_estimate(r));
  REQUIRE(m);
  CHECK(std::abs(*m - std::log(2.0)) < 0.03);
}

TEST_CASE("weighted log-rank matches the definition") {
  testgen::Gen g(10);
  for (int i = 0; i < 300; ++i) {
    const auto r = random_records(g, g.integer(4, 50), g.coin());
    for (const auto& scheme : kSchemes) {
      const auto o = oracle_logrank(r, scheme);
      if (!(o.var > 0)) {
        CHECK_THROWS_AS(weighted_logrank(r, scheme), DegenerateData);
        continue;
      }
      const auto res = weighted_logrank(r, scheme);
      CHECK(res.u == doctest::Approx(o.u).epsilon(1e-10).scale(1.0));
      CHECK(res.variance == doctest::Approx(o.var).epsilon(1e-10));
      CHECK(res.z == doctest::Approx(o.u / std::sqrt(o.var)).epsilon(1e-9).scale(1.0));
      CHECK(res.p_value == doctest::Approx(2 * (1 - 0.5 * std::erfc(-std::abs(res.z) / std::sqrt(2.0)))).epsilon(1e-9));
    }
  }
}

TEST_CASE("single event reduces to the hypergeometric step") {
  // One death among n at risk, n_a of them in A: u = 1[A] - n_a/n, var = (n_a/n)(1 - n_a/n).
  const Records r{{1, true, Group::A}, {2, false, Group::A}, {2, false, Group::B}, {3, false, Group::B},
                  {4, false, Group::B}};
  const auto res = weighted_logrank(r, WeightScheme::log_rank());
  const double pa = 2.0 / 5;
  CHECK(res.u == doctest::Approx(1 - pa));
  CHECK(res.variance == doctest::Approx(pa * (1 - pa)));
  CHECK(std::abs(res.z) == doctest::Approx((1 - pa) / std::sqrt(pa * (1 - pa))));
}

TEST_CASE("identical patterns give z = 0") {
  Records r;
  for (double t : {1.0, 2.0, 2.0, 4.0, 7.0})
    for (auto grp : {Group::A, Group::B}) r.push_back({t, t != 4.0, grp});
  for (const auto& scheme : kSchemes) CHECK(weighted_logrank(r, scheme).z == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("swapping groups negates z and keeps p") {
  testgen::Gen g(11);
  for (int i = 0; i < 200; ++i) {
    auto r = random_records(g, g.integer(6, 60), g.coin());
    for (const auto& scheme : kSchemes) {
      if (!(oracle_logrank(r, scheme).var > 0)) continue;
      const auto a = weighted_logrank(r, scheme);
      auto swapped = r;
      for (auto& x : swapped) x.group = x.group == Group::A ? Group::B : Group::A;
      const auto b = weighted_logrank(swapped, scheme);
      CHECK(b.z == doctest::Approx(-a.z).epsilon(1e-10).scale(1.0));
      CHECK(b.p_value == doctest::Approx(a.p_value).epsilon(1e-10));
    }
  }
}

TEST_CASE("z depends on the times only through their order") {
  testgen::Gen g(12);
  for (int i = 0; i < 100; ++i) {
    auto r = random_records(g, g.integer(6, 40), true);
    auto t = r;
    for (auto& x : t) x.time = std::exp(x.time) + 0.5 * x.time;
    for (const auto& scheme : kSchemes) {
      if (!(oracle_logrank(r, scheme).var > 0)) continue;
      CHECK(weighted_logrank(t, scheme).z == doctest::Approx(weighted_logrank(r, scheme).z).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("weight sequences") {
  testgen::Gen g(13);
  const auto r = random_records(g, 60, false);
  const auto table = event_table(r);
  REQUIRE(table.times.size() > 3);
  const auto lr = scheme_weights(table, WeightScheme::log_rank());
  const auto gb = scheme_weights(table, WeightScheme::gehan_breslow());
  const auto tw = scheme_weights(table, WeightScheme::tarone_ware());
  for (std::size_t i = 0; i < table.times.size(); ++i) {
    CHECK(lr[i] == 1.0);
    if (i) CHECK(gb[i] <= gb[i - 1]);
    const double gbn = gb[i] / gb[0], twn = tw[i] / tw[0];
    CHECK(twn <= 1.0 + 1e-15);
    CHECK(twn >= gbn - 1e-15);
    CHECK(gb[i] == table.n[i]);
  }
}

TEST_CASE("variance is positive whenever both groups share a risk set at an event") {
  testgen::Gen g(14);
  for (int i = 0; i < 300; ++i) {
    const auto r = random_records(g, g.integer(2, 15), true);
    const auto table = event_table(r);
    bool shared = false;
    for (std::size_t k = 0; k < table.times.size(); ++k)
      shared = shared || (table.n_a[k] > 0 && table.n_a[k] < table.n[k] && table.n[k] > table.d[k]);
    for (const auto& scheme : {WeightScheme::log_rank(), WeightScheme::gehan_breslow(), WeightScheme::tarone_ware()}) {
      if (shared) CHECK(weighted_logrank(r, scheme).variance > 0);
    }
  }
}

TEST_CASE("degenerate and invalid inputs") {
  const Records one_group{{1, true, Group::A}, {2, true, Group::A}};
  CHECK_THROWS_AS(weighted_logrank(one_group, WeightScheme::log_rank()), ConfigError);
  const Records no_events{{1, false, Group::A}, {2, false, Group::B}};
  CHECK_THROWS_WITH_AS(weighted_logrank(no_events, WeightScheme::log_rank()),
                       doctest::Contains("degenerate comparison"), DegenerateData);
  const Records bad{{-1, true, Group::A}};
  CHECK_THROWS_AS(validate(bad), Error);
  CHECK_THROWS_AS(WeightScheme::fleming_harrington(-1, 0), ConfigError);
}

TEST_CASE("direction from z") {
  LogRankResult r;
  r.z = 2.5;
  r.p_value = 2 * 0.5 * std::erfc(2.5 / std::sqrt(2.0));
  CHECK(logrank_direction(r, 0.05) == DirectionalDecision::ConcludeGreater);
  r.z = -1.0;
  r.p_value = 2 * 0.5 * std::erfc(1.0 / std::sqrt(2.0));
  CHECK(logrank_direction(r, 0.05) == DirectionalDecision::FailToReject);
  r.z = -1.97;
  r.p_value = 2 * 0.5 * std::erfc(1.97 / std::sqrt(2.0));
  CHECK(r.p_value == doctest::Approx(0.0488).epsilon(1e-3));
  CHECK(logrank_direction(r, 0.05) == DirectionalDecision::ConcludeLess);
}

TEST_CASE("scheme names round-trip") {
  for (const auto& s : kSchemes) CHECK(WeightScheme::parse(s.name()) == s);
  CHECK(WeightScheme::gehan_breslow().name() == "gehan-breslow");
  CHECK(WeightScheme::fleming_harrington(0, 1).name() == "fleming-harrington(0,1)");
  CHECK_THROWS(WeightScheme::parse("wilcoxon-ish"));
}
