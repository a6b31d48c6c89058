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

#include <string>

#include "dirstat/survival.hpp"
#include "dirstat/svg_plot.hpp"

using namespace dirstat;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("km_plot draws one step polyline per series") {
  using survival::Group;
  const std::vector<survival::SurvivalRecord> recs{{1, true, Group::A}, {2, false, Group::A}, {3, true, Group::A},
                                                   {1.5, true, Group::B}, {4, true, Group::B}};
  const auto a = survival::km_estimate(recs, Group::A);
  const auto b = survival::km_estimate(recs, Group::B);
  const auto svg = svg::km_plot({{"A & co", "#123456", a}, {"B", "#abcdef", b}}, 5.0, "KM <test>");

  CHECK(svg.starts_with("<?xml"));
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.rfind("</svg>") != std::string::npos);
  CHECK(count(svg, "class=\"km-step\"") == 2);
  CHECK(count(svg, "<polyline") == 2);
  // Title and label are escaped.
  CHECK(svg.find("KM &lt;test&gt;") != std::string::npos);
  CHECK(svg.find("A &amp; co") != std::string::npos);
  CHECK(svg.find("KM <test>") == std::string::npos);
  // Every opened element is closed or self-closing.
  CHECK(count(svg, "<text") == count(svg, "</text>"));
  CHECK(count(svg, "<g") == count(svg, "</g>"));
}

TEST_CASE("a curve with two events has five interior points") {
  using survival::Group;
  const std::vector<survival::SurvivalRecord> recs{{1, true, Group::A}, {3, true, Group::A}};
  const auto svg = svg::km_plot({{"A", "black", survival::km_estimate(recs)}}, 4.0, "t");
  const auto start = svg.find("points=\"");
  REQUIRE(start != std::string::npos);
  const auto stop = svg.find('"', start + 8);
  const auto points = svg.substr(start + 8, stop - start - 8);
  // origin, two points per event, tail
  CHECK(count(points, ",") == 6);
}
