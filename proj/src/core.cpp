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

#include "dirstat/core.hpp"

namespace dirstat {

DirectionalDecision decide(double p_value, std::optional<Direction> observed, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0,1)");
  if (!(p_value <= alpha) || !observed) return DirectionalDecision::FailToReject;
  return *observed == Direction::Greater ? DirectionalDecision::ConcludeGreater
                                         : DirectionalDecision::ConcludeLess;
}

DirectionalDecision decide(const TestOutcome& outcome, double alpha) {
  return decide(outcome.p_value, outcome.observed_direction, alpha);
}

OutcomeClass classify(TrueState truth, DirectionalDecision decision) noexcept {
  if (truth.is_null()) {
    switch (decision) {
      case DirectionalDecision::ConcludeLess: return OutcomeClass::AlphaLeft;
      case DirectionalDecision::ConcludeGreater: return OutcomeClass::AlphaRight;
      case DirectionalDecision::FailToReject: return OutcomeClass::CorrectFailUnderNull;
    }
  }
  if (decision == DirectionalDecision::FailToReject) return OutcomeClass::Beta;
  const Direction concluded = decision == DirectionalDecision::ConcludeGreater ? Direction::Greater
                                                                              : Direction::Less;
  return concluded == *truth.direction() ? OutcomeClass::Power : OutcomeClass::Gamma;
}

std::string_view to_string(Direction d) noexcept {
  return d == Direction::Less ? "less" : "greater";
}

std::string_view to_string(DirectionalDecision d) noexcept {
  switch (d) {
    case DirectionalDecision::ConcludeLess: return "conclude_less";
    case DirectionalDecision::FailToReject: return "fail_to_reject";
    case DirectionalDecision::ConcludeGreater: return "conclude_greater";
  }
  return "?";
}

std::string_view to_string(OutcomeClass c) noexcept {
  switch (c) {
    case OutcomeClass::AlphaLeft: return "alpha_left";
    case OutcomeClass::AlphaRight: return "alpha_right";
    case OutcomeClass::CorrectFailUnderNull: return "fail_under_null";
    case OutcomeClass::Power: return "power";
    case OutcomeClass::Beta: return "beta";
    case OutcomeClass::Gamma: return "gamma";
  }
  return "?";
}

std::string to_string(TrueState t) {
  if (t.is_null()) return "null";
  return "effect_" + std::string(to_string(*t.direction()));
}

DirectionalDecision parse_decision(std::string_view s) {
  if (s == "conclude_less") return DirectionalDecision::ConcludeLess;
  if (s == "fail_to_reject") return DirectionalDecision::FailToReject;
  if (s == "conclude_greater") return DirectionalDecision::ConcludeGreater;
  throw ParseError(0, "unknown decision '" + std::string(s) + "'");
}

TrueState parse_true_state(std::string_view s) {
  if (s == "null") return TrueState::null();
  if (s == "effect_less") return TrueState::effect(Direction::Less);
  if (s == "effect_greater") return TrueState::effect(Direction::Greater);
  throw ParseError(0, "unknown true state '" + std::string(s) + "'");
}

void ErrorDecomposition::add(OutcomeClass c) {
  const bool null_class = c == OutcomeClass::AlphaLeft || c == OutcomeClass::AlphaRight ||
                          c == OutcomeClass::CorrectFailUnderNull;
  if (null_class != context_.is_null())
    throw ConfigError("outcome class " + std::string(to_string(c)) +
                      " does not belong to context " + to_string(context_));
  ++counts_[static_cast<int>(c)];
  ++n_;
}

ErrorDecomposition ErrorDecomposition::from_counts(TrueState context,
                                                   const std::array<std::uint64_t, 6>& counts) {
  ErrorDecomposition d(context);
  for (int i = 0; i < 6; ++i) {
    if (counts[i] == 0) continue;
    d.add(static_cast<OutcomeClass>(i));  // validates membership
    d.counts_[i] = counts[i];
    d.n_ += counts[i] - 1;
  }
  return d;
}

void ErrorDecomposition::merge(const ErrorDecomposition& other) {
  if (!(other.context_ == context_)) throw ConfigError("cannot merge decompositions of different contexts");
  for (int i = 0; i < 6; ++i) counts_[i] += other.counts_[i];
  n_ += other.n_;
}

Rate ErrorDecomposition::rate(OutcomeClass c) const noexcept {
  Rate r;
  r.count = count(c);
  r.rate = n_ ? static_cast<double>(r.count) / static_cast<double>(n_) : 0.0;
  r.se = mc_standard_error(r.rate, n_);
  return r;
}

Rate ErrorDecomposition::rejection() const noexcept {
  Rate r;
  r.count = count(OutcomeClass::AlphaLeft) + count(OutcomeClass::AlphaRight) +
            count(OutcomeClass::Power) + count(OutcomeClass::Gamma);
  r.rate = n_ ? static_cast<double>(r.count) / static_cast<double>(n_) : 0.0;
  r.se = mc_standard_error(r.rate, n_);
  return r;
}

}  // namespace dirstat
