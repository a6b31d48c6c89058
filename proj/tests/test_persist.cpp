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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dirstat/persist.hpp"

using namespace dirstat;
using namespace dirstat::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "dirstat_persist_test";
  fs::create_directories(dir);
  const auto p = dir / name;
  fs::remove(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentResult sample_result() {
  ExperimentConfig c;
  auto s = scenarios::crossing_scenario();
  s.n_a = s.n_b = 40;
  s.cutoff = 3.0;
  c.scenario = s;
  c.test.kind = TestKind::MedianComparison;
  c.test.scheme = survival::WeightScheme::fleming_harrington(0.5, 1);
  c.n_reps = 12;
  c.keep_records = true;
  return run_experiment(c, 2);
}

}  // namespace

TEST_CASE("save and load round-trip every field") {
  const auto r = sample_result();
  const auto path = scratch("result.json");
  persist::save_result(r, path);
  const auto back = persist::load_result(path);
  CHECK(back.same_statistics(r));
  CHECK(back.wall_seconds == r.wall_seconds);
  CHECK(back.threads == r.threads);
  CHECK(!fs::exists(path.string() + ".tmp"));
}

TEST_CASE("scenario and config documents round-trip") {
  std::vector<ScenarioSpec> all{scenarios::default_roc_scenario(), scenarios::equal_median_scenario(),
                                SingleObservationParams{1e-6}, scenarios::BinomialScenarioParams{30, 0.31, 0.5}};
  for (const auto& s : all) CHECK(persist::scenario_from_json(persist::scenario_to_json(s)) == s);
  ExperimentConfig c;
  c.scenario = scenarios::BinomialScenarioParams{12, 0.2, 0.3};
  c.test.kind = TestKind::CiDuality;
  c.test.estimator = intervals::Estimator::JeffreysHpd;
  c.alpha = 0.1;
  c.master_seed = 99;
  CHECK(persist::config_from_json(persist::config_to_json(c)) == c);
}

TEST_CASE("partial config documents override a base") {
  ExperimentConfig base;
  base.scenario = scenarios::default_roc_scenario();
  const auto j = persist::parse_json_text(R"({"alpha": 0.01, "n_reps": 17, "test": {"kind": "bootstrap_auc"}})");
  const auto c = persist::config_from_json(j, base);
  CHECK(c.alpha == 0.01);
  CHECK(c.n_reps == 17);
  CHECK(c.test.kind == TestKind::BootstrapAuc);
  CHECK(c.scenario == base.scenario);
  CHECK(c.master_seed == base.master_seed);
}

TEST_CASE("summary without timing is byte-identical across reruns") {
  const auto a = persist::result_to_json(sample_result(), false).dump(2);
  const auto b = persist::result_to_json(sample_result(), false).dump(2);
  CHECK(a == b);
  CHECK(a.find("timing") == std::string::npos);

  const auto p1 = scratch("rerun1.json"), p2 = scratch("rerun2.json");
  persist::write_file_atomic(p1, persist::result_to_json(sample_result(), false).dump(2));
  persist::write_file_atomic(p2, persist::result_to_json(sample_result(), false).dump(2));
  CHECK(slurp(p1) == slurp(p2));
  CHECK(slurp(p1).find("wall_seconds") == std::string::npos);
}

TEST_CASE("truncated file is a parse error with a line number") {
  const auto path = scratch("truncated.json");
  const auto text = persist::result_to_json(sample_result()).dump(2);
  {
    std::ofstream out(path);
    out << text.substr(0, text.size() / 2);
  }
  try {
    persist::load_result(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() > 1);
  }
}

TEST_CASE("syntax errors name their line") {
  try {
    persist::parse_json_text("{\n  \"a\": 1,\n  \"b\": ]\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).starts_with("line 3"));
  }
}

TEST_CASE("schema version mismatch") {
  auto j = persist::result_to_json(sample_result());
  j["schema_version"] = "dirstat.experiment/0";
  CHECK_THROWS_AS(persist::result_from_json(j), persist::VersionError);
  j.erase("schema_version");
  CHECK_THROWS_AS(persist::result_from_json(j), persist::VersionError);
}

TEST_CASE("inconsistent documents are rejected") {
  auto j = persist::result_to_json(sample_result());
  j["decomposition"]["n_reps"] = 13;
  CHECK_THROWS_AS(persist::result_from_json(j), ParseError);
  j = persist::result_to_json(sample_result());
  j["decomposition"]["counts"]["power"] = 5;
  CHECK_THROWS_AS(persist::result_from_json(j), ParseError);
}

TEST_CASE("result log appends and reloads") {
  const auto path = scratch("log.jsonl");
  const auto r = sample_result();
  persist::append_result_log(r, path);
  persist::append_result_log(r, path);
  const auto all = persist::load_result_log(path);
  REQUIRE(all.size() == 2);
  CHECK(all[1].same_statistics(r));
  {
    std::ofstream out(path, std::ios::app);
    out << "{\"schema_version\": \n";
  }
  try {
    persist::load_result_log(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("records CSV") {
  const auto r = sample_result();
  const auto csv = persist::records_csv(r);
  CHECK(csv.starts_with("rep,statistic,p_value,decision,true_state\n"));
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == r.records.size() + 1);
}

TEST_CASE("shortest round-trip doubles") {
  CHECK(persist::format_double(0.1) == "0.1");
  CHECK(persist::format_double(1.0) == "1");
  CHECK(persist::format_double(std::nan("")) == "nan");
  for (double v : {1.0 / 3, 2.718281828459045, 1e-300, 6.02e23}) CHECK(std::stod(persist::format_double(v)) == v);
}
