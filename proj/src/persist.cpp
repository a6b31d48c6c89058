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

#include "dirstat/persist.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dirstat::persist {

using nlohmann::json;

namespace {

json hazard_to_json(const scenarios::PiecewiseHazard& h) {
  return {{"breakpoints", h.breakpoints}, {"rates", h.rates}};
}

scenarios::PiecewiseHazard hazard_from_json(const json& j) {
  scenarios::PiecewiseHazard h;
  h.breakpoints = j.at("breakpoints").get<std::vector<double>>();
  h.rates = j.at("rates").get<std::vector<double>>();
  return h;
}

template <class T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

json decomposition_to_json(const ErrorDecomposition& d) {
  json counts = json::object(), rates = json::object();
  for (int i = 0; i < 6; ++i) {
    const auto c = static_cast<OutcomeClass>(i);
    const auto r = d.rate(c);
    counts[std::string(to_string(c))] = r.count;
    rates[std::string(to_string(c))] = {{"rate", r.rate}, {"se", r.se}};
  }
  const auto rej = d.rejection();
  rates["rejection"] = {{"rate", rej.rate}, {"se", rej.se}};
  return {{"context", to_string(d.context())}, {"n_reps", d.n_reps()}, {"counts", counts}, {"rates", rates}};
}

ErrorDecomposition decomposition_from_json(const json& j) {
  std::array<std::uint64_t, 6> counts{};
  const json& c = j.at("counts");
  for (int i = 0; i < 6; ++i) counts[i] = c.at(std::string(to_string(static_cast<OutcomeClass>(i)))).get<std::uint64_t>();
  auto d = ErrorDecomposition::from_counts(parse_true_state(j.at("context").get<std::string>()), counts);
  if (d.n_reps() != j.at("n_reps").get<std::uint64_t>()) throw ParseError(0, "decomposition counts do not sum to n_reps");
  return d;
}

json stat_to_json(double v) { return std::isnan(v) ? json(nullptr) : json(v); }
double stat_from_json(const json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte; ++i)
    if (text[i] == '\n') ++line;
  return line;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

json scenario_to_json(const harness::ScenarioSpec& scenario) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, scenarios::RocScenarioParams>) {
          return {{"type", "roc"},
                  {"x", {{"mu", s.x.mu}, {"sigma", s.x.sigma}}},
                  {"y", {{"mu", s.y.mu}, {"sigma", s.y.sigma}}},
                  {"rho", s.rho},
                  {"n_pos", s.n_pos},
                  {"n_neg", s.n_neg}};
        } else if constexpr (std::is_same_v<T, scenarios::SurvivalScenarioParams>) {
          return {{"type", "survival"},
                  {"group_a", hazard_to_json(s.group_a)},
                  {"group_b", hazard_to_json(s.group_b)},
                  {"cutoff", s.cutoff},
                  {"n_a", s.n_a},
                  {"n_b", s.n_b}};
        } else if constexpr (std::is_same_v<T, harness::SingleObservationParams>) {
          return {{"type", "single_observation"}, {"delta", s.delta}};
        } else {
          return {{"type", "binomial"}, {"n", s.n}, {"p", s.p}, {"theta0", s.theta0}};
        }
      },
      scenario);
}

harness::ScenarioSpec scenario_from_json(const json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "roc") {
    scenarios::RocScenarioParams s;
    s.x = {j.at("x").at("mu").get<double>(), j.at("x").at("sigma").get<double>()};
    s.y = {j.at("y").at("mu").get<double>(), j.at("y").at("sigma").get<double>()};
    read_opt(j, "rho", s.rho);
    read_opt(j, "n_pos", s.n_pos);
    read_opt(j, "n_neg", s.n_neg);
    return s;
  }
  if (type == "survival") {
    scenarios::SurvivalScenarioParams s;
    s.group_a = hazard_from_json(j.at("group_a"));
    s.group_b = hazard_from_json(j.at("group_b"));
    read_opt(j, "cutoff", s.cutoff);
    read_opt(j, "n_a", s.n_a);
    read_opt(j, "n_b", s.n_b);
    return s;
  }
  if (type == "single_observation") return harness::SingleObservationParams{j.at("delta").get<double>()};
  if (type == "binomial") {
    scenarios::BinomialScenarioParams s;
    read_opt(j, "n", s.n);
    read_opt(j, "p", s.p);
    read_opt(j, "theta0", s.theta0);
    return s;
  }
  throw ParseError(0, "unknown scenario type '" + type + "'");
}

json config_to_json(const harness::ExperimentConfig& c) {
  return {{"scenario", scenario_to_json(c.scenario)},
          {"test",
           {{"kind", harness::to_string(c.test.kind)},
            {"scheme", c.test.scheme.name()},
            {"estimator", intervals::to_string(c.test.estimator)}}},
          {"alpha", c.alpha},
          {"n_reps", c.n_reps},
          {"master_seed", c.master_seed},
          {"n_permutations", c.n_permutations},
          {"n_boot", c.n_boot},
          {"keep_records", c.keep_records}};
}

harness::ExperimentConfig config_from_json(const json& j, harness::ExperimentConfig c) {
  if (!j.is_object()) throw ParseError(0, "experiment config must be a JSON object");
  if (j.contains("scenario")) c.scenario = scenario_from_json(j.at("scenario"));
  if (j.contains("test")) {
    const json& t = j.at("test");
    if (t.contains("kind")) c.test.kind = harness::parse_test_kind(t.at("kind").get<std::string>());
    if (t.contains("scheme")) c.test.scheme = survival::WeightScheme::parse(t.at("scheme").get<std::string>());
    if (t.contains("estimator")) c.test.estimator = intervals::parse_estimator(t.at("estimator").get<std::string>());
  }
  read_opt(j, "alpha", c.alpha);
  read_opt(j, "n_reps", c.n_reps);
  read_opt(j, "master_seed", c.master_seed);
  read_opt(j, "n_permutations", c.n_permutations);
  read_opt(j, "n_boot", c.n_boot);
  read_opt(j, "keep_records", c.keep_records);
  return c;
}

json result_to_json(const harness::ExperimentResult& r, bool include_timing) {
  json doc = {{"schema_version", kSchemaVersion},
              {"config", config_to_json(r.config)},
              {"test_name", r.config.test.name()},
              {"true_state", to_string(r.config.truth())},
              {"decomposition", decomposition_to_json(r.decomposition)}};
  json records = json::array();
  for (const auto& rec : r.records)
    records.push_back({{"rep", rec.rep},
                       {"statistic", stat_to_json(rec.statistic)},
                       {"p_value", rec.p_value},
                       {"decision", to_string(rec.decision)},
                       {"true_state", to_string(rec.true_state)}});
  doc["records"] = std::move(records);
  if (include_timing)
    doc["timing"] = {{"wall_seconds", r.wall_seconds}, {"reps_per_second", r.reps_per_second}, {"threads", r.threads}};
  return doc;
}

harness::ExperimentResult result_from_json(const json& j) {
  if (!j.is_object() || !j.contains("schema_version")) throw VersionError(0, "missing schema_version");
  const auto version = j.at("schema_version").get<std::string>();
  if (version != kSchemaVersion)
    throw VersionError(0, "schema version mismatch: expected '" + std::string(kSchemaVersion) + "', found '" +
                              version + "'");
  try {
    harness::ExperimentResult r;
    r.config = config_from_json(j.at("config"));
    r.decomposition = decomposition_from_json(j.at("decomposition"));
    if (!(r.decomposition.context() == r.config.truth()))
      throw ParseError(0, "decomposition context does not match the scenario truth");
    for (const auto& rec : j.at("records")) {
      harness::ReplicationRecord x;
      x.rep = rec.at("rep").get<std::uint64_t>();
      x.statistic = stat_from_json(rec.at("statistic"));
      x.p_value = rec.at("p_value").get<double>();
      x.decision = parse_decision(rec.at("decision").get<std::string>());
      x.true_state = parse_true_state(rec.at("true_state").get<std::string>());
      r.records.push_back(x);
    }
    if (j.contains("timing")) {
      const json& t = j.at("timing");
      r.wall_seconds = t.at("wall_seconds").get<double>();
      r.reps_per_second = t.at("reps_per_second").get<double>();
      r.threads = t.at("threads").get<unsigned>();
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("invalid result document: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(0, std::string("invalid result document: ") + e.what());
  }
}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(line_of_byte(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
}

json read_json_file(const std::filesystem::path& path) { return parse_json_text(read_text(path)); }

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void save_result(const harness::ExperimentResult& result, const std::filesystem::path& path) {
  write_file_atomic(path, result_to_json(result).dump(2) + "\n");
}

harness::ExperimentResult load_result(const std::filesystem::path& path) {
  return result_from_json(read_json_file(path));
}

void append_result_log(const harness::ExperimentResult& result, const std::filesystem::path& path) {
  const std::string line = result_to_json(result).dump() + "\n";
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot open " + path.string());
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  out.flush();
  if (!out) throw Error("append failed for " + path.string());
}

std::vector<harness::ExperimentResult> load_result_log(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::vector<harness::ExperimentResult> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      out.push_back(result_from_json(parse_json_text(line)));
    } catch (const VersionError& e) {
      throw VersionError(number, e.what());
    } catch (const ParseError& e) {
      throw ParseError(number, e.what());
    }
  }
  return out;
}

std::string records_csv(const harness::ExperimentResult& result) {
  std::string out = "rep,statistic,p_value,decision,true_state\n";
  for (const auto& r : result.records) {
    out += std::to_string(r.rep) + "," + format_double(r.statistic) + "," + format_double(r.p_value) + "," +
           std::string(to_string(r.decision)) + "," + to_string(r.true_state) + "\n";
  }
  return out;
}

}  // namespace dirstat::persist
