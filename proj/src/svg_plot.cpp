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

#include "dirstat/svg_plot.hpp"

#include <cstdio>
#include <sstream>

namespace dirstat::svg {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string km_plot(const std::vector<StepSeries>& series, double t_max, const std::string& title) {
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto sx = [&](double t) { return kLeft + pw * (t_max > 0 ? t / t_max : 0.0); };
  auto sy = [&](double s) { return kTop + ph * (1.0 - s); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
     << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
     << escape(title) << "</text>\n";

  // Axes and ticks.
  os << "  <g stroke=\"black\" stroke-width=\"1\">\n"
     << "    <line x1=\"" << num(sx(0)) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(sx(t_max)) << "\" y2=\""
     << num(sy(0)) << "\"/>\n"
     << "    <line x1=\"" << num(sx(0)) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(sx(0)) << "\" y2=\""
     << num(sy(1)) << "\"/>\n"
     << "  </g>\n"
     << "  <g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double s = k / 5.0, t = t_max * k / 5.0;
    os << "    <text x=\"" << num(sx(0) - 6) << "\" y=\"" << num(sy(s) + 4) << "\" text-anchor=\"end\">" << num(s)
       << "</text>\n"
       << "    <text x=\"" << num(sx(t)) << "\" y=\"" << num(sy(0) + 16) << "\" text-anchor=\"middle\">" << num(t)
       << "</text>\n";
  }
  os << "    <text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 10)
     << "\" text-anchor=\"middle\">time</text>\n"
     << "    <text x=\"16\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << num(kTop + ph / 2) << ")\">survival</text>\n"
     << "  </g>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& c = series[i].curve;
    os << "  <polyline class=\"km-step\" fill=\"none\" stroke=\"" << escape(series[i].color)
       << "\" stroke-width=\"1.5\" points=\"" << num(sx(0)) << "," << num(sy(1));
    double level = 1.0;
    for (std::size_t k = 0; k < c.times.size() && c.times[k] <= t_max; ++k) {
      os << " " << num(sx(c.times[k])) << "," << num(sy(level));
      level = c.survival[k];
      os << " " << num(sx(c.times[k])) << "," << num(sy(level));
    }
    os << " " << num(sx(t_max)) << "," << num(sy(level)) << "\"/>\n";
    const double ly = kTop + 14 + 16 * static_cast<double>(i);
    os << "  <line x1=\"" << num(kWidth - 170) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(kWidth - 150)
       << "\" y2=\"" << num(ly) << "\" stroke=\"" << escape(series[i].color) << "\" stroke-width=\"2\"/>\n"
       << "  <text x=\"" << num(kWidth - 145) << "\" y=\"" << num(ly + 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(series[i].label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace dirstat::svg
