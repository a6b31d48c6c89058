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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dirstat/roc.hpp"
#include "dirstat/survival.hpp"

namespace dirstat::csv {

// UTF-8, comma separated, dot decimal, one header row. Columns are matched
// by name and may appear in any order. Errors are ParseError with the 1-based
// line number; blank lines are skipped.

/// Columns `class,marker_x,marker_y`, class in {0, 1}. A single-class file
/// throws DegenerateData("degenerate class").
roc::PairedDiagnosticDataset parse_roc(std::string_view text);
roc::PairedDiagnosticDataset read_roc(const std::filesystem::path& path);

/// Columns `time,event,group`, event in {0, 1}, group in {A, B}, time > 0.
std::vector<survival::SurvivalRecord> parse_survival(std::string_view text);
std::vector<survival::SurvivalRecord> read_survival(const std::filesystem::path& path);

std::string format_survival(std::span<const survival::SurvivalRecord> records);
std::string format_roc(const roc::PairedDiagnosticDataset& data);

}  // namespace dirstat::csv
