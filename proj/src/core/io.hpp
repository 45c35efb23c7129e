#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/simulation.hpp"

namespace ssalt {

struct ExperimentConfig {
  StressProfile profile;
  std::size_t n = 0;  // units on test (>= number of recorded failures)
  std::string data_path;
  std::string time_unit;
};

struct ReadFailuresResult {
  SsaltSample sample;
  std::size_t dropped = 0;  // recorded failures at or past tau2, now censored
};

// Newline-delimited nonnegative decimal times, '#' comments. Times past tau2
// count as survivors; input order is irrelevant.
ReadFailuresResult read_failures(const std::string& path, const ExperimentConfig& config);

// One failure time per line (step-1 then step-2, ascending), 17 significant
// digits.
void write_failures(const std::string& path, const SsaltSample& sample);

struct FitTableRow {
  double beta = 0.0;
  double a0 = 0.0, a0_lo = 0.0, a0_hi = 0.0;
  double a1 = 0.0, a1_lo = 0.0, a1_hi = 0.0;
  double eta = 0.0, eta_lo = 0.0, eta_hi = 0.0;
  bool converged = true;
};

// CSV columns: beta,a0,a0_lo,a0_hi,a1,a1_lo,a1_hi,eta,eta_lo,eta_hi,converged.
// Rows are written in ascending beta regardless of input order.
void write_fit_table(std::vector<FitTableRow> rows, const std::string& path);
std::vector<FitTableRow> read_fit_table(const std::string& path);

// Writes rmse.csv, coverage.csv, cloud.csv and study_log.csv under dir.
void write_study_report(const StudyReport& report, const std::string& dir);

struct FitSection {
  std::vector<double> betas{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  double level = 0.95;
  int restarts = 5;
  int max_iters = 2000;
  double tol = 1e-10;
};

struct SimulateSection {
  ModelParams truth{2.0, -0.8, 5.5};
  std::size_t n = 200;
  std::size_t replications = 500;
  std::vector<double> betas{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<double> epsilons{0.0};
  std::string target = "a1";
  double window_upper = 1.5;
  std::uint64_t seed = 1;
  double level = 0.95;
  double mission_time = 2.0;
  double quantile_p = 0.5;
};

// Flat key-value configuration with [profile], [data], [fit] and [simulate]
// sections; see the README for the schema.
struct AppConfig {
  StressProfile profile;
  std::size_t n = 0;
  std::string data_path;  // resolved relative to the config file
  std::string time_unit;
  FitSection fit;
  SimulateSection simulate;
  bool has_profile = false;
  bool has_data = false;
};

AppConfig load_config(const std::string& path);

// 17-significant-digit decimal formatting used by every writer, so that
// read-back reproduces values bit-exactly.
std::string format_g17(double v);

}  // namespace ssalt
