#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/model.hpp"

namespace ssalt {

enum class ContaminationTarget { a0, a1, eta };

std::string to_string(ContaminationTarget target);
ContaminationTarget target_from_string(const std::string& name);

// epsilon-fraction of outliers drawn from a Weibull with one perturbed
// parameter, conditioned on the window (0, window_upper). The perturbed
// parameter is solved from P(0 < W < window_upper) = epsilon.
struct ContaminationScheme {
  double epsilon = 0.0;
  ContaminationTarget target = ContaminationTarget::a1;
  double window_upper = 1.5;
  ModelParams contaminated;  // filled by calibrate_contamination
  bool calibrated = false;
};

struct StudyConfig {
  ModelParams truth;
  StressProfile profile;
  std::size_t n = 200;
  std::size_t replications = 500;
  std::vector<double> betas{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  std::uint64_t seed = 1;
  double level = 0.95;
  double mission_time = 2.0;  // reliability characteristic R(t) at profile.x0
  double quantile_p = 0.5;    // median by default
  int workers = 0;            // 0 = hardware concurrency
  int fit_restarts = 2;
  double fit_tol = 1e-9;
};

struct RmseRow {
  std::string target;
  double epsilon;
  double beta;
  std::string quantity;
  double value;
};

struct CoverageRow {
  std::string target;
  double epsilon;
  double beta;
  std::string quantity;
  std::string ci_form;
  double value;
};

struct CloudRow {
  std::string target;
  double epsilon;
  double beta;
  std::size_t replication;
  double a0, a1, eta;
};

struct StudyReport {
  std::vector<RmseRow> rmse;
  std::vector<CoverageRow> coverage;
  std::vector<CloudRow> cloud;
  std::size_t replications = 0;
  std::size_t discarded = 0;    // degenerate replications redrawn
  std::size_t failed_fits = 0;  // fits that raised; excluded from aggregates
};

// Solves the calibration equation for the scheme's target parameter; the two
// other coordinates stay at the truth. epsilon == 0 returns the truth.
ModelParams calibrate_contamination(const ModelParams& truth, const StressProfile& profile,
                                    const ContaminationScheme& scheme);

// One replication keyed by (config.seed, index): ceil(eps * n) contaminated
// draws replace clean ones; degenerate samples (no failures in one interval)
// are redrawn from a fresh substream. *discards counts the redraws.
SsaltSample generate_replication(const StudyConfig& config, const ContaminationScheme& scheme,
                                 std::size_t replication_index, std::size_t* discards = nullptr);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

// Fits every (scheme, beta, replication) cell and aggregates RMSE and
// empirical CI coverage. Replications run in parallel but aggregation is
// fixed-order, so the report depends only on (config, schemes).
StudyReport run_study(const StudyConfig& config, const std::vector<ContaminationScheme>& schemes,
                      const ProgressFn& progress = nullptr);

}  // namespace ssalt
