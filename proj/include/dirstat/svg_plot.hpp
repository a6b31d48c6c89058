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

#include <string>
#include <vector>

#include "dirstat/survival.hpp"

namespace dirstat::svg {

struct StepSeries {
  std::string label;
  std::string color;
  survival::KmCurve curve;
};

/// Minimal standalone SVG: axes, ticks, one step polyline per series and a
/// legend. Curves are drawn from t = 0 to `t_max`.
std::string km_plot(const std::vector<StepSeries>& series, double t_max, const std::string& title);

}  // namespace dirstat::svg
