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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dirstat/harness.hpp"

namespace dirstat::persist {

/// Written into every result document; loading any other value fails.
inline constexpr std::string_view kSchemaVersion = "dirstat.experiment/1";

/// Unknown/mismatched schema version.
class VersionError : public ParseError {
 public:
  using ParseError::ParseError;
};

nlohmann::json scenario_to_json(const harness::ScenarioSpec& scenario);
harness::ScenarioSpec scenario_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const harness::ExperimentConfig& config);
/// Missing fields keep the values already in `base`, so a partial document
/// works as an override layer.
harness::ExperimentConfig config_from_json(const nlohmann::json& j, harness::ExperimentConfig base = {});

/// Full result document. With include_timing = false the output depends only
/// on the configuration (byte-identical across reruns).
nlohmann::json result_to_json(const harness::ExperimentResult& result, bool include_timing = true);
harness::ExperimentResult result_from_json(const nlohmann::json& j);

/// Parse a JSON document; syntax errors become ParseError with the 1-based line.
nlohmann::json parse_json_text(std::string_view text);
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Write via a temporary sibling and rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

void save_result(const harness::ExperimentResult& result, const std::filesystem::path& path);
harness::ExperimentResult load_result(const std::filesystem::path& path);

/// One compact JSON document per line, appended with a single write.
void append_result_log(const harness::ExperimentResult& result, const std::filesystem::path& path);
/// Errors name the offending line.
std::vector<harness::ExperimentResult> load_result_log(const std::filesystem::path& path);

/// CSV header: rep,statistic,p_value,decision,true_state
std::string records_csv(const harness::ExperimentResult& result);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace dirstat::persist
