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

#include "dirstat/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "dirstat/csv_input.hpp"
#include "dirstat/harness.hpp"
#include "dirstat/persist.hpp"
#include "dirstat/roc.hpp"
#include "dirstat/scenarios.hpp"
#include "dirstat/svg_plot.hpp"

namespace dirstat::cli {

namespace fs = std::filesystem;
using persist::format_double;

namespace {

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

// Rates are printed with the same shortest round-trip text the JSON uses.
void print_decomposition(std::ostream& out, const harness::ExperimentResult& r) {
  const auto& d = r.decomposition;
  out << "== " << r.config.test.name() << "  truth=" << to_string(d.context()) << "  reps=" << d.n_reps()
      << "  alpha=" << format_double(r.config.alpha) << "  seed=" << r.config.master_seed << "\n";
  out << "  " << pad("metric", 13) << pad("count", 8) << pad("rate", 22) << "mc_se\n";
  auto row = [&](std::string_view name, const Rate& rate) {
    out << "  " << pad(std::string(name), 13) << pad(std::to_string(rate.count), 8) << pad(format_double(rate.rate), 22)
        << format_double(rate.se) << "\n";
  };
  row("alpha_left", d.alpha_left());
  row("alpha_right", d.alpha_right());
  if (d.context().is_null()) {
    row("fail", d.fail_under_null());
  } else {
    row("beta", d.beta());
    row("gamma", d.gamma());
    row("power", d.power());
  }
  row("rejection", d.rejection());
}

struct Common {
  std::uint64_t reps = 1000;
  std::uint64_t seed = 42;
  double alpha = 0.05;
  unsigned threads = 0;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--reps", c.reps, "Monte Carlo replications")->capture_default_str();
  app->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  app->add_option("--alpha", c.alpha, "Two-sided significance level")->capture_default_str();
  app->add_option("--threads", c.threads, "Worker threads (0: $DIRSTAT_THREADS or all cores)")->capture_default_str();
}

void apply_common(const CLI::App* app, const Common& c, harness::ExperimentConfig& cfg) {
  if (app->count("--reps")) cfg.n_reps = c.reps;
  if (app->count("--seed")) cfg.master_seed = c.seed;
  if (app->count("--alpha")) cfg.alpha = c.alpha;
}

void write_json(const fs::path& path, const nlohmann::json& doc) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  persist::write_file_atomic(path, doc.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

struct SimulateRoc {
  Common common;
  std::uint64_t permutations = roc::kDefaultPermutations;
  std::uint64_t boot = roc::kDefaultBootstrap;
  std::string config_file;
  std::string out_dir = "results";
  bool records = false;
  bool null_scenario = false;
};

int simulate_roc(const CLI::App* app, const SimulateRoc& o, std::ostream& out) {
  harness::ExperimentConfig base;
  base.scenario = o.null_scenario ? scenarios::null_roc_scenario() : scenarios::default_roc_scenario();
  if (!o.config_file.empty()) base = persist::config_from_json(persist::read_json_file(o.config_file), base);
  apply_common(app, o.common, base);
  if (app->count("--permutations")) base.n_permutations = o.permutations;
  if (app->count("--boot")) base.n_boot = o.boot;
  base.keep_records = base.keep_records || o.records;

  auto venkatraman = base;
  venkatraman.test.kind = harness::TestKind::Venkatraman;
  auto bootstrap = base;
  bootstrap.test.kind = harness::TestKind::BootstrapAuc;
  venkatraman.validate();
  bootstrap.validate();

  const auto& params = std::get<scenarios::RocScenarioParams>(base.scenario);
  out << "ROC scenario: auc_x=" << fixed(params.true_auc_x()) << " auc_y=" << fixed(params.true_auc_y())
      << " sigma_y=" << format_double(params.y.sigma) << " rho=" << format_double(params.rho) << " n_pos=" << params.n_pos
      << " n_neg=" << params.n_neg << "\n";

  for (const auto& cfg : {venkatraman, bootstrap}) {
    const auto result = harness::run_experiment(cfg, o.common.threads);
    print_decomposition(out, result);
    out << "  (" << fixed(result.wall_seconds, 2) << " s, " << result.threads << " threads)\n";
    if (cfg.test.kind == harness::TestKind::Venkatraman)
      out << "  note: the Venkatraman statistic compares whole curves; reading its sign as an AUC\n"
             "        comparison is the directional misinterpretation audited here.\n";
    const fs::path json_path = fs::path(o.out_dir) / ("roc_" + std::string(harness::to_string(cfg.test.kind)) + ".json");
    write_json(json_path, persist::result_to_json(result, false));
    if (cfg.keep_records)
      persist::write_file_atomic(fs::path(o.out_dir) / ("roc_" + std::string(harness::to_string(cfg.test.kind)) + ".csv"),
                                 persist::records_csv(result));
    out << "  summary: " << json_path.string() << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SimulateSurvival {
  Common common;
  std::uint32_t n = 2000;
  std::uint32_t median_n = 500;
  std::uint64_t dataset_seed = scenarios::kFrozenCrossingSeed;
  std::string data_file;
  std::string write_data;
  std::string plot;
  std::string out_dir = "results";
};

std::vector<survival::WeightScheme> reported_schemes() {
  return {survival::WeightScheme::log_rank(), survival::WeightScheme::gehan_breslow(),
          survival::WeightScheme::tarone_ware(), survival::WeightScheme::fleming_harrington(0.0, 1.0)};
}

nlohmann::json logrank_table(std::ostream& out, std::span<const survival::SurvivalRecord> data, double alpha) {
  nlohmann::json rows = nlohmann::json::array();
  out << "  " << pad("scheme", 30) << pad("z", 24) << pad("p_value", 24) << "decision\n";
  for (const auto& scheme : reported_schemes()) {
    const auto r = survival::weighted_logrank(data, scheme);
    const auto decision = survival::logrank_direction(r, alpha);
    out << "  " << pad(scheme.name(), 30) << pad(format_double(r.z), 24) << pad(format_double(r.p_value), 24)
        << to_string(decision) << "\n";
    rows.push_back({{"scheme", scheme.name()},
                    {"z", r.z},
                    {"p_value", r.p_value},
                    {"u", r.u},
                    {"variance", r.variance},
                    {"decision", to_string(decision)}});
  }
  return rows;
}

int simulate_survival(const CLI::App* app, const SimulateSurvival& o, std::ostream& out) {
  harness::ExperimentConfig median_cfg;
  auto eq = scenarios::equal_median_scenario();
  eq.n_a = eq.n_b = o.median_n;
  median_cfg.scenario = eq;
  median_cfg.test.kind = harness::TestKind::MedianComparison;
  median_cfg.test.scheme = survival::WeightScheme::gehan_breslow();
  median_cfg.keep_records = true;
  apply_common(app, o.common, median_cfg);
  median_cfg.validate();

  auto crossing = scenarios::crossing_scenario();
  crossing.n_a = crossing.n_b = o.n;
  crossing.validate();
  std::vector<survival::SurvivalRecord> data;
  if (!o.data_file.empty()) {
    data = csv::read_survival(o.data_file);
    out << "Crossing-hazard dataset: " << o.data_file << " (" << data.size() << " records)\n";
  } else {
    auto rng = rng_stream(o.dataset_seed, 0);
    data = scenarios::generate_survival_dataset(crossing, rng);
    out << "Crossing-hazard dataset: generated, n=" << o.n << "/arm, dataset seed " << o.dataset_seed << "\n";
  }
  if (!o.write_data.empty()) persist::write_file_atomic(o.write_data, csv::format_survival(data));

  const auto km_a = survival::km_estimate(data, survival::Group::A);
  const auto km_b = survival::km_estimate(data, survival::Group::B);
  const auto med_a = survival::median_survival(km_a), med_b = survival::median_survival(km_b);
  out << "  median A=" << (med_a ? format_double(*med_a) : "NA") << "  median B=" << (med_b ? format_double(*med_b) : "NA")
      << "  (z > 0: group B survives better under that weighting)\n";
  nlohmann::json crossing_doc = {{"schema_version", persist::kSchemaVersion},
                                 {"scenario", persist::scenario_to_json(crossing)},
                                 {"dataset", o.data_file.empty() ? "generated" : o.data_file},
                                 {"dataset_seed", o.dataset_seed},
                                 {"alpha", median_cfg.alpha},
                                 {"median_a", med_a ? nlohmann::json(*med_a) : nlohmann::json(nullptr)},
                                 {"median_b", med_b ? nlohmann::json(*med_b) : nlohmann::json(nullptr)}};
  crossing_doc["logrank"] = logrank_table(out, data, median_cfg.alpha);

  if (!o.plot.empty()) {
    double t_max = 0.0;
    for (const auto& r : data) t_max = std::max(t_max, r.time);
    const std::string svg = svg::km_plot({{"group A", "#1f4e9c", km_a}, {"group B", "#c0392b", km_b}}, t_max,
                                         "Kaplan-Meier, crossing hazards");
    persist::write_file_atomic(o.plot, svg);
    out << "  plot: " << o.plot << "\n";
  }

  const auto result = harness::run_experiment(median_cfg, o.common.threads);
  std::uint64_t significant = 0, a_longer = 0;
  for (const auto& rec : result.records) {
    significant += rec.p_value <= median_cfg.alpha ? 1 : 0;
    a_longer += rec.statistic < 0.0 ? 1 : 0;  // statistic = median_B - median_A
  }
  const double n = static_cast<double>(result.records.size());
  const double gehan_rate = static_cast<double>(significant) / n;
  const double a_longer_rate = static_cast<double>(a_longer) / n;
  out << "Equal-median scenario: n=" << o.median_n << "/arm, true medians A="
      << format_double(eq.group_a.median()) << " B=" << format_double(eq.group_b.median()) << "\n";
  out << "  gehan-breslow rejection rate  " << format_double(gehan_rate) << "  (se " << format_double(mc_standard_error(gehan_rate, result.records.size())) << ")\n";
  out << "  P(median_A > median_B)        " << format_double(a_longer_rate) << "  (se " << format_double(mc_standard_error(a_longer_rate, result.records.size())) << ")\n";
  print_decomposition(out, result);

  auto median_doc = persist::result_to_json(result, false);
  median_doc["summary"] = {{"gehan_rejection_rate", gehan_rate}, {"p_median_a_greater", a_longer_rate}};
  write_json(fs::path(o.out_dir) / "survival_crossing.json", crossing_doc);
  write_json(fs::path(o.out_dir) / "survival_equal_median.json", median_doc);
  out << "  summary: " << (fs::path(o.out_dir) / "survival_crossing.json").string() << ", "
      << (fs::path(o.out_dir) / "survival_equal_median.json").string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct AuditCi {
  std::uint32_t n = 30;
  double alpha = 0.05;
  std::vector<std::string> estimators;
  std::string grid;
  std::string out_file;
};

std::vector<double> parse_grid(const std::string& spec) {
  if (spec.empty()) return intervals::default_p_grid();
  // start:stop:step or a comma list
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    double start = 0, stop = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0))
      throw ConfigError("grid must be start:stop:step");
    for (int k = 0;; ++k) {
      const double p = start + k * step;
      if (p > stop + 1e-12) break;
      grid.push_back(p);
    }
  } else {
    std::istringstream in(spec);
    std::string cell;
    while (std::getline(in, cell, ',')) grid.push_back(std::stod(cell));
  }
  for (double p : grid)
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("grid values must lie in [0,1]");
  if (grid.empty()) throw ConfigError("empty p grid");
  return grid;
}

int audit_ci(const AuditCi& o, std::ostream& out) {
  if (o.n == 0) throw ConfigError("n must be >= 1");
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw ConfigError("alpha must lie in (0,1)");
  std::vector<intervals::Estimator> estimators;
  if (o.estimators.empty())
    estimators.assign(std::begin(intervals::kAllEstimators), std::end(intervals::kAllEstimators));
  for (const auto& name : o.estimators) estimators.push_back(intervals::parse_estimator(name));
  const auto grid = parse_grid(o.grid);

  std::string csv_text = "estimator,n,p,coverage,alpha_l,alpha_u,left_hw,right_hw,width\n";
  std::ostringstream summary;
  summary << pad("estimator", 14) << pad("max_alpha_l", 24) << pad("max_alpha_u", 24) << pad("max_total", 24)
          << "mean_width\n";
  for (auto e : estimators) {
    const auto table = harness::run_ci_audit_sweep(e, o.n, o.alpha, grid);
    for (const auto& r : table.rows)
      csv_text += std::string(intervals::to_string(e)) + "," + std::to_string(r.n) + "," + format_double(r.p) + "," +
                  format_double(r.coverage) + "," + format_double(r.alpha_l_realized) + "," +
                  format_double(r.alpha_u_realized) + "," + format_double(r.left_half_width) + "," +
                  format_double(r.right_half_width) + "," + format_double(r.expected_width) + "\n";
    summary << pad(std::string(intervals::to_string(e)), 14) << pad(format_double(table.worst_alpha_l()), 24)
            << pad(format_double(table.worst_alpha_u()), 24) << pad(format_double(table.worst_total()), 24)
            << format_double(table.mean_width()) << "\n";
  }
  if (o.out_file.empty()) {
    out << csv_text;
  } else {
    persist::write_file_atomic(o.out_file, csv_text);
    out << "n=" << o.n << " alpha=" << format_double(o.alpha) << " grid points=" << grid.size() << "\n"
        << summary.str() << "rows: " << o.out_file << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct TestCmd {
  std::string input;
  double alpha = 0.05;
  std::uint64_t permutations = roc::kDefaultPermutations;
  std::uint64_t boot = roc::kDefaultBootstrap;
  std::uint64_t seed = 42;
  std::vector<std::string> methods;
};

int test_roc(const TestCmd& o, std::ostream& out) {
  const auto data = csv::read_roc(o.input);
  std::vector<std::string> methods = o.methods.empty() ? std::vector<std::string>{"venkatraman", "bootstrap_auc"} : o.methods;
  const auto rng = rng_stream(o.seed, 0);
  out << "ROC data: " << data.n_positive() << " positive, " << data.n_negative() << " negative\n";
  for (const auto& m : methods) {
    if (m == "venkatraman") {
      const auto r = roc::venkatraman_test(data, o.permutations, rng);
      out << "venkatraman: e_obs=" << format_double(r.e_obs) << " p_value=" << format_double(r.p_value)
          << " auc_x=" << format_double(r.auc_x) << " auc_y=" << format_double(r.auc_y)
          << " decision=" << to_string(roc::naive_auc_direction(r, o.alpha)) << "\n";
      out << "warning: the Venkatraman test compares whole ROC curves and has no directional reading;\n"
             "         a significant result does not show which marker has the larger AUC.\n";
    } else if (m == "bootstrap_auc") {
      const auto r = roc::bootstrap_auc_difference_test(data, o.boot, rng.substream(1ULL << 40));
      out << "bootstrap_auc: auc_x-auc_y=" << format_double(r.statistic) << " p_value=" << format_double(r.p_value)
          << " decision=" << to_string(decide(r, o.alpha)) << "\n";
    } else {
      throw ConfigError("unknown ROC method '" + m + "' (venkatraman, bootstrap_auc)");
    }
  }
  return kExitOk;
}

int test_survival(const TestCmd& o, std::ostream& out) {
  const auto data = csv::read_survival(o.input);
  std::vector<survival::WeightScheme> schemes;
  for (const auto& m : o.methods) schemes.push_back(survival::WeightScheme::parse(m));
  if (schemes.empty()) schemes = reported_schemes();
  out << "survival data: " << data.size() << " records\n";
  out << "  " << pad("scheme", 30) << pad("z", 24) << pad("p_value", 24) << "decision\n";
  for (const auto& s : schemes) {
    const auto r = survival::weighted_logrank(data, s);
    out << "  " << pad(s.name(), 30) << pad(format_double(r.z), 24) << pad(format_double(r.p_value), 24)
        << to_string(survival::logrank_direction(r, o.alpha)) << "\n";
  }
  out << "  (conclude_greater: group B survives better under that weighting)\n";
  const bool weighted = std::any_of(schemes.begin(), schemes.end(), [](const auto& s) {
    return s.kind() == survival::WeightScheme::Kind::GehanBreslow || s.kind() == survival::WeightScheme::Kind::TaroneWare;
  });
  if (weighted)
    out << "warning: Gehan-Breslow and Tarone-Ware weight early events; when curves cross their sign\n"
           "         does not indicate which group has the better median or long-term survival.\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

int report(const std::vector<std::string>& files, bool log, std::ostream& out) {
  if (files.empty()) throw ConfigError("report needs at least one result file");
  for (const auto& f : files) {
    std::vector<harness::ExperimentResult> results;
    if (log)
      results = persist::load_result_log(f);
    else
      results.push_back(persist::load_result(f));
    for (const auto& r : results) print_decomposition(out, r);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct CalibrateRoc {
  Common common;
  std::vector<double> sigma_y{1.5, 2.0, 2.5, 3.0};
  std::vector<double> rho{0.0, 0.25, 0.5, 0.75};
  std::uint64_t permutations = 199;
};

int calibrate_roc(const CalibrateRoc& o, std::ostream& out) {
  out << pad("sigma_y", 10) << pad("rho", 8) << pad("power", 10) << pad("gamma", 10) << "beta\n";
  for (double s : o.sigma_y)
    for (double r : o.rho) {
      harness::ExperimentConfig cfg;
      cfg.scenario = scenarios::calibrate_roc_scenario(0.763, 0.759, s, r);
      cfg.test.kind = harness::TestKind::Venkatraman;
      cfg.n_reps = o.common.reps;
      cfg.master_seed = o.common.seed;
      cfg.alpha = o.common.alpha;
      cfg.n_permutations = o.permutations;
      const auto res = harness::run_experiment(cfg, o.common.threads);
      out << pad(format_double(s), 10) << pad(format_double(r), 8) << pad(fixed(res.decomposition.power().rate, 3), 10)
          << pad(fixed(res.decomposition.gamma().rate, 3), 10) << fixed(res.decomposition.beta().rate, 3) << "\n";
    }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"dirstat: directional error audits for tests and confidence intervals", "dirstat"};
  app.require_subcommand(1);

  SimulateRoc sim_roc;
  auto* roc_cmd = app.add_subcommand("simulate-roc", "Crossing-ROC experiment: Venkatraman vs bootstrap AUC test");
  add_common(roc_cmd, sim_roc.common);
  roc_cmd->add_option("--permutations", sim_roc.permutations, "Permutations per Venkatraman test")->capture_default_str();
  roc_cmd->add_option("--boot", sim_roc.boot, "Bootstrap replicates per AUC test")->capture_default_str();
  roc_cmd->add_option("--config", sim_roc.config_file, "JSON experiment config (flags override it)");
  roc_cmd->add_option("--out", sim_roc.out_dir, "Directory for summary JSON")->capture_default_str();
  roc_cmd->add_flag("--records", sim_roc.records, "Also write per-replication CSV");
  roc_cmd->add_flag("--null", sim_roc.null_scenario, "Use identical marker laws (validity check)");

  SimulateSurvival sim_surv;
  auto* surv_cmd = app.add_subcommand("simulate-survival", "Crossing-hazard sign reversal and equal-median experiment");
  add_common(surv_cmd, sim_surv.common);
  surv_cmd->add_option("--n", sim_surv.n, "Subjects per arm in the crossing dataset")->capture_default_str();
  surv_cmd->add_option("--median-n", sim_surv.median_n, "Subjects per arm in the equal-median experiment")->capture_default_str();
  surv_cmd->add_option("--dataset-seed", sim_surv.dataset_seed, "Seed of the generated crossing dataset")->capture_default_str();
  surv_cmd->add_option("--data", sim_surv.data_file, "Read the crossing dataset from CSV instead of generating it");
  surv_cmd->add_option("--write-data", sim_surv.write_data, "Write the crossing dataset to CSV");
  surv_cmd->add_option("--plot", sim_surv.plot, "Write Kaplan-Meier curves as SVG");
  surv_cmd->add_option("--out", sim_surv.out_dir, "Directory for summary JSON")->capture_default_str();

  AuditCi audit;
  auto* audit_cmd = app.add_subcommand("audit-ci", "Exact coverage / alpha_L / alpha_U / half-width sweep");
  audit_cmd->add_option("--n", audit.n, "Binomial sample size")->capture_default_str();
  audit_cmd->add_option("--alpha", audit.alpha, "1 - confidence level")->capture_default_str();
  audit_cmd->add_option("--estimator", audit.estimators, "cp-equal, cp-shortest, wald, jeffreys-hpd (default: all)")->delimiter(',');
  audit_cmd->add_option("--grid", audit.grid, "p grid as start:stop:step or a comma list (default 0.01:0.99:0.01)");
  audit_cmd->add_option("--out", audit.out_file, "CSV output path (default: stdout)");

  TestCmd test_opts;
  auto* test_cmd = app.add_subcommand("test", "Apply a test to CSV data");
  test_cmd->require_subcommand(1);
  std::vector<CLI::App*> test_kinds;
  for (const char* kind : {"roc", "survival"}) {
    auto* sub = test_cmd->add_subcommand(kind, std::string("Test ") + kind + " data");
    sub->add_option("input", test_opts.input, "CSV file")->required()->check(CLI::ExistingFile);
    sub->add_option("--alpha", test_opts.alpha)->capture_default_str();
    sub->add_option("--method", test_opts.methods, "Tests or weight schemes to run");
    sub->add_option("--seed", test_opts.seed)->capture_default_str();
    if (std::string(kind) == "roc") {
      sub->add_option("--permutations", test_opts.permutations)->capture_default_str();
      sub->add_option("--boot", test_opts.boot)->capture_default_str();
    }
    test_kinds.push_back(sub);
  }

  std::vector<std::string> report_files;
  bool report_log = false;
  auto* report_cmd = app.add_subcommand("report", "Print tables from saved result JSON");
  report_cmd->add_option("files", report_files, "Result JSON files")->required();
  report_cmd->add_flag("--log", report_log, "Inputs are JSON-lines result logs");

  CalibrateRoc calib;
  calib.common.reps = 200;
  auto* calib_cmd = app.add_subcommand("calibrate-roc", "Sweep sigma_y and rho for the crossing-ROC scenario");
  add_common(calib_cmd, calib.common);
  calib_cmd->add_option("--sigma-y", calib.sigma_y, "Spreads of marker y to try")->delimiter(',')->capture_default_str();
  calib_cmd->add_option("--rho", calib.rho, "Latent correlations to try")->delimiter(',')->capture_default_str();
  calib_cmd->add_option("--permutations", calib.permutations, "Permutations per test")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*roc_cmd) return simulate_roc(roc_cmd, sim_roc, out);
    if (*surv_cmd) return simulate_survival(surv_cmd, sim_surv, out);
    if (*audit_cmd) return audit_ci(audit, out);
    if (*test_kinds[0]) return test_roc(test_opts, out);
    if (*test_kinds[1]) return test_survival(test_opts, out);
    if (*report_cmd) return report(report_files, report_log, out);
    if (*calib_cmd) return calibrate_roc(calib, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const DegenerateData& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace dirstat::cli
