// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo experiment driver: recovery-rate sweeps, timing curves,
// correlation studies and single-instance case studies, with CSV/JSON
// output suitable for plotting.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ratiocs/model.hpp"
#include "ratiocs/numerics.hpp"
#include "ratiocs/solvers.hpp"

namespace ratiocs {

struct ExperimentSpec {
  std::string kind = "recovery_rate";  // recovery_rate, timing, correlation,
                                       // case_study, width_check,
                                       // robustness_check
  int m = 50;
  int n = 250;
  std::vector<int> s_list = {6, 12, 18, 24};
  int trials = 20;
  int replications = 5;
  CoefficientDistribution dist = CoefficientDistribution::uniform_annulus(5, 10);
  std::vector<std::string> methods;
  uint64_t seed = 1;
  std::vector<double> quantiles = {0.2, 0.5, 0.8};
  SolverConfig cfg;

  // timing runs
  std::vector<int> n_list = {64, 128, 256, 512};
  int samples = 10;
  double timeout_seconds = 300.0;

  // width / robustness runs
  int width_samples = 10000;
  double noise_fraction = 0.01;

  // when false, wall_ms is written as 0 so reruns are byte-identical
  bool record_timing = true;

  uint64_t digest() const;
  std::string to_json_text() const;
  static ExperimentSpec from_json_text(const std::string& text);

  void validate() const;  // throws DomainError
};

struct ExperimentRecord {
  std::string method;
  int s = 0;
  int replication = 0;
  int trial = 0;
  bool recovered = false;
  double rel_error = 0.0;
  double wall_ms = 0.0;
  std::map<std::string, double> extra;
};

struct SummaryCell {
  std::map<std::string, double> quantiles;  // "q0.2" -> value
  double mean_rate = 0.0;
  double mean_time_ms = 0.0;
};

struct ExperimentOutput {
  std::vector<ExperimentRecord> records;
  uint64_t spec_digest = 0;
  std::map<std::string, std::map<int, SummaryCell>> per_method;
  std::string report_text;  // human-readable extras (case study table, ...)

  std::string summary_json() const;
};

// CSV with exact header: method,s,replication,trial,recovered,rel_error,
// wall_ms,extra_json
std::string records_to_csv(const std::vector<ExperimentRecord>& records);

ExperimentOutput run_recovery_rate(const ExperimentSpec& spec,
                                   int parallelism = 1);
ExperimentOutput run_timing(const ExperimentSpec& spec);
ExperimentOutput run_correlation(const ExperimentSpec& spec,
                                 int parallelism = 1);
ExperimentOutput run_case_study(const ExperimentSpec& spec);
ExperimentOutput run_width_check(const ExperimentSpec& spec,
                                 int parallelism = 1);
ExperimentOutput run_robustness_check(const ExperimentSpec& spec,
                                      int parallelism = 1);

// Dispatch on spec.kind.
ExperimentOutput run_experiment(const ExperimentSpec& spec,
                                int parallelism = 1);

// Writes records.csv and summary.json (plus report.txt when nonempty).
void write_outputs(const ExperimentOutput& out,
                   const std::filesystem::path& out_dir);

}  // namespace ratiocs
