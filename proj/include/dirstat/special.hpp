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
#include <functional>

namespace dirstat {

/// Standard normal CDF.
double normal_cdf(double x) noexcept;
/// Standard normal upper tail 1 - Phi(x), accurate for large x.
double normal_sf(double x) noexcept;
/// Inverse of the standard normal CDF (Wichura AS241, ~1e-16 relative).
/// Returns -inf/+inf at 0/1 and NaN outside [0, 1].
double normal_quantile(double p) noexcept;
/// Two-sided normal p-value 2(1 - Phi(|z|)).
double two_sided_normal_p(double z) noexcept;

/// log of the Binomial(n, p) probability mass at k.
double binomial_log_pmf(std::uint32_t k, std::uint32_t n, double p) noexcept;
double binomial_pmf(std::uint32_t k, std::uint32_t n, double p) noexcept;
/// P(X <= x) for X ~ Binomial(n, p).
double binomial_cdf(std::uint32_t x, std::uint32_t n, double p) noexcept;
/// P(X >= x) for X ~ Binomial(n, p).
double binomial_sf(std::uint32_t x, std::uint32_t n, double p) noexcept;

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x) noexcept;
double beta_log_pdf(double a, double b, double x) noexcept;
/// Inverse of I_x(a, b) in x by bisection to `tol`.
double beta_quantile(double a, double b, double prob, double tol = 1e-12) noexcept;

/// Root of a monotone function on [lo, hi] by bisection until the bracket is
/// narrower than `tol`. `f(lo)` and `f(hi)` must have opposite signs (or be
/// zero); otherwise the endpoint with the smaller |f| is returned.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace dirstat
