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

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dirstat {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data cannot support the requested computation (empty class, no
/// comparable event times, ...).
class DegenerateData : public Error {
 public:
  using Error::Error;
};

/// Invalid argument combination or experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `line()` is 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// ---------------------------------------------------------------------------
// Directional vocabulary
// ---------------------------------------------------------------------------

/// Sign of theta - theta0.
enum class Direction : std::uint8_t { Less, Greater };

constexpr Direction operator-(Direction d) noexcept {
  return d == Direction::Less ? Direction::Greater : Direction::Less;
}

/// Sign of a real value; absent for exactly zero (and NaN).
inline std::optional<Direction> direction_of(double value) noexcept {
  if (value > 0.0) return Direction::Greater;
  if (value < 0.0) return Direction::Less;
  return std::nullopt;
}

/// theta = theta0, or an effect in a known direction.
class TrueState {
 public:
  static constexpr TrueState null() noexcept { return TrueState{}; }
  static constexpr TrueState effect(Direction d) noexcept { return TrueState{d}; }
  /// Null for a zero difference, Effect(sign) otherwise.
  static TrueState from_difference(double diff) noexcept {
    auto d = direction_of(diff);
    return d ? effect(*d) : null();
  }

  constexpr bool is_null() const noexcept { return !direction_.has_value(); }
  constexpr std::optional<Direction> direction() const noexcept { return direction_; }

  friend constexpr bool operator==(TrueState, TrueState) = default;

 private:
  constexpr TrueState() = default;
  constexpr explicit TrueState(Direction d) : direction_(d) {}
  std::optional<Direction> direction_;
};

enum class DirectionalDecision : std::uint8_t { ConcludeLess, FailToReject, ConcludeGreater };

enum class OutcomeClass : std::uint8_t {
  AlphaLeft,
  AlphaRight,
  CorrectFailUnderNull,
  Power,
  Beta,
  Gamma,
};

struct TestOutcome {
  double statistic = 0.0;
  double p_value = 1.0;
  std::optional<Direction> observed_direction;
  std::optional<std::uint64_t> permutations_used;
};

/// Significance is p <= alpha. A significant result without an observed
/// direction folds into FailToReject.
DirectionalDecision decide(const TestOutcome& outcome, double alpha);

/// Same rule from the raw pair.
DirectionalDecision decide(double p_value, std::optional<Direction> observed, double alpha);

OutcomeClass classify(TrueState truth, DirectionalDecision decision) noexcept;

std::string_view to_string(Direction d) noexcept;
std::string_view to_string(DirectionalDecision d) noexcept;
std::string_view to_string(OutcomeClass c) noexcept;
std::string to_string(TrueState t);

DirectionalDecision parse_decision(std::string_view s);
TrueState parse_true_state(std::string_view s);

// ---------------------------------------------------------------------------
// Error decomposition
// ---------------------------------------------------------------------------

struct Rate {
  std::uint64_t count = 0;
  double rate = 0.0;
  /// sqrt(r(1-r)/n)
  double se = 0.0;
};

/// Monte Carlo tally of directional outcomes within a single truth context.
class ErrorDecomposition {
 public:
  explicit ErrorDecomposition(TrueState context) : context_(context) {}
  /// Rebuild from stored counts, indexed by OutcomeClass. Throws ConfigError
  /// when a class outside the context has a non-zero count.
  static ErrorDecomposition from_counts(TrueState context, const std::array<std::uint64_t, 6>& counts);

  void add(DirectionalDecision decision) { add(classify(context_, decision)); }
  void add(OutcomeClass c);
  /// Counts must share the same context.
  void merge(const ErrorDecomposition& other);

  TrueState context() const noexcept { return context_; }
  std::uint64_t n_reps() const noexcept { return n_; }
  std::uint64_t count(OutcomeClass c) const noexcept { return counts_[static_cast<int>(c)]; }
  Rate rate(OutcomeClass c) const noexcept;

  Rate alpha_left() const noexcept { return rate(OutcomeClass::AlphaLeft); }
  Rate alpha_right() const noexcept { return rate(OutcomeClass::AlphaRight); }
  Rate fail_under_null() const noexcept { return rate(OutcomeClass::CorrectFailUnderNull); }
  Rate power() const noexcept { return rate(OutcomeClass::Power); }
  Rate beta() const noexcept { return rate(OutcomeClass::Beta); }
  Rate gamma() const noexcept { return rate(OutcomeClass::Gamma); }
  /// Any directional conclusion, regardless of truth.
  Rate rejection() const noexcept;

  friend bool operator==(const ErrorDecomposition&, const ErrorDecomposition&) = default;

 private:
  TrueState context_;
  std::uint64_t n_ = 0;
  std::uint64_t counts_[6] = {};
};

/// Monte Carlo standard error of a proportion.
inline double mc_standard_error(double rate, std::uint64_t n) {
  return n ? std::sqrt(rate * (1.0 - rate) / static_cast<double>(n)) : 0.0;
}

}  // namespace dirstat
