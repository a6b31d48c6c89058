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

#include "dirstat/special.hpp"

#include <cmath>
#include <limits>

namespace dirstat {

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_sf(double x) noexcept { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double two_sided_normal_p(double z) noexcept {
  const double p = 2.0 * normal_sf(std::fabs(z));
  return p > 1.0 ? 1.0 : p;
}

// Wichura, Algorithm AS 241 (PPND16).
double normal_quantile(double p) noexcept {
  if (std::isnan(p) || p < 0.0 || p > 1.0) return std::numeric_limits<double>::quiet_NaN();
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return std::numeric_limits<double>::infinity();

  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r + 67265.770927008700853) * r +
                45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((r * 5226.495278852545925 + 28729.085735721942674) * r + 39307.89580009271061) * r +
                21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }

  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
                 1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
              4.6303378461565452959) * r + 1.42343711074968357734) /
            (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
                 0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
              2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
                 0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
              5.4637849111641143699) * r + 6.6579046435011037772) /
            (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
                 7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
              0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -value : value;
}

double binomial_log_pmf(std::uint32_t k, std::uint32_t n, double p) noexcept {
  if (k > n) return -std::numeric_limits<double>::infinity();
  if (p <= 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
  const double kd = k, nd = n;
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) + kd * std::log(p) +
         (nd - kd) * std::log1p(-p);
}

double binomial_pmf(std::uint32_t k, std::uint32_t n, double p) noexcept {
  return std::exp(binomial_log_pmf(k, n, p));
}

namespace {

// Tail sums start at the term nearest the mode (anchored in log space) and
// walk away from it with the pmf ratio, so every added term is smaller than
// the previous one.
double sum_down_from(std::uint32_t x, std::uint32_t n, double p) noexcept {
  double term = binomial_pmf(x, n, p);
  double sum = term;
  const double odds = (1.0 - p) / p;
  for (std::uint32_t k = x; k > 0 && term > sum * 1e-18; --k) {
    term *= static_cast<double>(k) / static_cast<double>(n - k + 1) * odds;
    sum += term;
  }
  return sum;
}

double sum_up_from(std::uint32_t x, std::uint32_t n, double p) noexcept {
  double term = binomial_pmf(x, n, p);
  double sum = term;
  const double odds = p / (1.0 - p);
  for (std::uint32_t k = x; k < n && term > sum * 1e-18; ++k) {
    term *= static_cast<double>(n - k) / static_cast<double>(k + 1) * odds;
    sum += term;
  }
  return sum;
}

}  // namespace

double binomial_cdf(std::uint32_t x, std::uint32_t n, double p) noexcept {
  if (x >= n || p <= 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  if (static_cast<double>(x) < static_cast<double>(n) * p) return std::fmin(1.0, sum_down_from(x, n, p));
  return std::fmax(0.0, 1.0 - sum_up_from(x + 1, n, p));
}

double binomial_sf(std::uint32_t x, std::uint32_t n, double p) noexcept {
  if (x == 0) return 1.0;
  if (x > n || p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  if (static_cast<double>(x) > static_cast<double>(n) * p) return std::fmin(1.0, sum_up_from(x, n, p));
  return std::fmax(0.0, 1.0 - sum_down_from(x - 1, n, p));
}

double beta_log_pdf(double a, double b, double x) noexcept {
  if (x <= 0.0 || x >= 1.0) {
    if ((x == 0.0 && a < 1.0) || (x == 1.0 && b < 1.0)) return std::numeric_limits<double>::infinity();
    if ((x == 0.0 && a == 1.0) || (x == 1.0 && b == 1.0))
      return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
    return -std::numeric_limits<double>::infinity();
  }
  return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + (a - 1.0) * std::log(x) +
         (b - 1.0) * std::log1p(-x);
}

namespace {

// Continued fraction for I_x(a, b), modified Lentz.
double beta_continued_fraction(double a, double b, double x) noexcept {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) noexcept {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double beta_quantile(double a, double b, double prob, double tol) noexcept {
  if (prob <= 0.0) return 0.0;
  if (prob >= 1.0) return 1.0;
  return bisect([&](double x) { return incomplete_beta(a, b, x) - prob; }, 0.0, 1.0, tol);
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) return std::fabs(flo) < std::fabs(fhi) ? lo : hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace dirstat
