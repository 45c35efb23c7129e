#include "core/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "core/asymptotics.hpp"
#include "core/characteristics.hpp"
#include "core/errors.hpp"
#include "core/estimator.hpp"
#include "core/rng.hpp"

namespace ssalt {

std::string to_string(ContaminationTarget target) {
  switch (target) {
    case ContaminationTarget::a0:
      return "a0";
    case ContaminationTarget::a1:
      return "a1";
    case ContaminationTarget::eta:
      return "eta";
  }
  return "?";
}

ContaminationTarget target_from_string(const std::string& name) {
  if (name == "a0") return ContaminationTarget::a0;
  if (name == "a1") return ContaminationTarget::a1;
  if (name == "eta") return ContaminationTarget::eta;
  raise(errc::invalid_argument, "unknown contamination target '" + name + "'");
}

namespace {

// P(0 < W < upper) for W ~ Weibull(exp(a0 + a1 x1), eta).
double window_mass(const ModelParams& p, double x1, double upper) {
  const double lambda = std::exp(p.a0 + p.a1 * x1);
  return -std::expm1(-std::pow(upper / lambda, p.eta));
}

ModelParams with_target(const ModelParams& truth, ContaminationTarget target, double value) {
  ModelParams p = truth;
  switch (target) {
    case ContaminationTarget::a0:
      p.a0 = value;
      break;
    case ContaminationTarget::a1:
      p.a1 = value;
      break;
    case ContaminationTarget::eta:
      p.eta = value;
      break;
  }
  return p;
}

double target_value(const ModelParams& p, ContaminationTarget target) {
  switch (target) {
    case ContaminationTarget::a0:
      return p.a0;
    case ContaminationTarget::a1:
      return p.a1;
    case ContaminationTarget::eta:
      return p.eta;
  }
  return 0.0;
}

}  // namespace

ModelParams calibrate_contamination(const ModelParams& truth, const StressProfile& profile,
                                    const ContaminationScheme& scheme) {
  validate(truth);
  validate(profile);
  if (!(scheme.epsilon >= 0.0 && scheme.epsilon < 1.0))
    raise(errc::infeasible_scheme, "contamination fraction must lie in [0, 1)");
  if (!(scheme.window_upper > 0.0 && scheme.window_upper < profile.tau1))
    raise(errc::infeasible_scheme, "outlier window must satisfy 0 < upper < tau1");
  if (scheme.epsilon == 0.0) return truth;

  const auto mass = [&](double v) {
    ModelParams p = with_target(truth, scheme.target, v);
    if (scheme.target == ContaminationTarget::eta && !(v > 0.0)) return -1.0;
    if (scheme.target == ContaminationTarget::a1 && !(v < 0.0)) return -1.0;
    return window_mass(p, profile.x1, scheme.window_upper);
  };

  // Expand a bracket around the truth until the calibration equation changes
  // sign, then bisect.
  const double v0 = target_value(truth, scheme.target);
  double lo = v0, hi = v0;
  double f_lo = mass(lo) - scheme.epsilon;
  double f_hi = f_lo;
  double step = 0.25;
  for (int i = 0; i < 64 && f_lo * f_hi > 0.0; ++i) {
    if (scheme.target == ContaminationTarget::eta) {
      lo = std::max(lo / 1.5, 1e-6);
      hi = hi * 1.5;
    } else if (scheme.target == ContaminationTarget::a1) {
      lo -= step;
      hi = std::min(hi + step, -1e-12);
    } else {
      lo -= step;
      hi += step;
    }
    step *= 1.5;
    f_lo = mass(lo) - scheme.epsilon;
    f_hi = mass(hi) - scheme.epsilon;
  }
  if (f_lo * f_hi > 0.0)
    raise(errc::infeasible_scheme, "no contaminated parameter reaches the requested fraction");

  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = mass(mid) - scheme.epsilon;
    if (std::abs(f_mid) < 1e-12 || (hi - lo) < 1e-13 * std::max(1.0, std::abs(mid))) {
      return with_target(truth, scheme.target, mid);
    }
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return with_target(truth, scheme.target, 0.5 * (lo + hi));
}

SsaltSample generate_replication(const StudyConfig& config, const ContaminationScheme& scheme,
                                 std::size_t replication_index, std::size_t* discards) {
  if (scheme.epsilon > 0.0 && !scheme.calibrated)
    raise(errc::infeasible_scheme, "contamination scheme must be calibrated first");
  const std::size_t n = config.n;
  const std::size_t n_outliers =
      scheme.epsilon > 0.0
          ? static_cast<std::size_t>(std::ceil(scheme.epsilon * static_cast<double>(n)))
          : 0;

  const ModelParams& truth = config.truth;
  const StressProfile& pr = config.profile;
  const double lambda1 = scale_at(truth, pr.x1);
  const double lambda2 = scale_at(truth, pr.x2);
  const double h = shift_time(truth, pr);
  const double inv_eta = 1.0 / truth.eta;
  const double f_tau1 = -std::expm1(-std::pow(pr.tau1 / lambda1, truth.eta));

  double out_lambda = 0.0, out_mass = 0.0, out_inv_eta = 0.0;
  if (n_outliers > 0) {
    out_lambda = std::exp(scheme.contaminated.a0 + scheme.contaminated.a1 * pr.x1);
    out_inv_eta = 1.0 / scheme.contaminated.eta;
    out_mass = -std::expm1(-std::pow(scheme.window_upper / out_lambda, scheme.contaminated.eta));
  }

  std::size_t n_discarded = 0;
  for (std::size_t attempt = 0;; ++attempt) {
    Rng rng = Rng::stream(config.seed, replication_index, attempt);
    std::vector<double> times;
    times.reserve(n);
    // Outliers conditioned on (0, window_upper); always land in step 1
    // because window_upper < tau1.
    for (std::size_t i = 0; i < n_outliers; ++i) {
      const double v = rng.uniform_open();
      const double t = out_lambda * std::pow(-std::log1p(-v * out_mass), out_inv_eta);
      times.push_back(t);
    }
    for (std::size_t i = n_outliers; i < n; ++i) {
      const double u = rng.uniform_open();
      const double m = std::pow(-std::log1p(-u), inv_eta);
      const double t = (u < f_tau1) ? lambda1 * m : lambda2 * m - h;
      if (t < pr.tau2) times.push_back(t);
    }
    SsaltSample sample = split_sample(std::move(times), n, pr);
    if (sample.step1_count() >= 1 && sample.step2_count() >= 1) {
      if (discards) *discards = n_discarded;
      return sample;
    }
    ++n_discarded;
    if (attempt > 1000)
      raise(errc::numerical, "could not draw a non-degenerate replication in 1000 attempts");
  }
}

namespace {

struct CellResult {
  bool valid = false;
  bool converged = false;
  ModelParams theta;
  bool cover_param[3] = {false, false, false};
  // mttf, reliability, median
  bool cover_direct[3] = {false, false, false};
  bool cover_transformed[3] = {false, false, false};
};

struct TrueValues {
  double mttf_v, rel_v, med_v;
};

CellResult evaluate_cell(const StudyConfig& config, const SsaltSample& sample, double beta,
                         const ModelParams* warm_start, const TrueValues& truth_values) {
  CellResult cell;
  FitOptions options;
  options.beta = beta;
  options.restarts = config.fit_restarts;
  options.tol = config.fit_tol;
  DpdFit fit;
  try {
    fit = fit_mdpde(config.profile, sample, options);
    if (warm_start) {
      FitOptions warm = options;
      warm.init = *warm_start;
      warm.restarts = 1;
      const DpdFit alt = fit_mdpde(config.profile, sample, warm);
      if (alt.objective < fit.objective) fit = alt;
    }
    const SandwichCov cov = sandwich_covariance(fit.theta_hat, config.profile, beta);
    const auto cis = param_ci(fit, cov, config.n, config.level);
    const double truth_coord[3] = {config.truth.a0, config.truth.a1, config.truth.eta};
    for (int i = 0; i < 3; ++i)
      cell.cover_param[i] = cis[i].lo <= truth_coord[i] && truth_coord[i] <= cis[i].hi;

    const double x0 = config.profile.x0;
    const CharacteristicEstimate chars[3] = {
        estimate_characteristic(CharKind::mttf, fit.theta_hat, x0, 0.0, cov.sigma, config.n,
                                config.level),
        estimate_characteristic(CharKind::reliability, fit.theta_hat, x0, config.mission_time,
                                cov.sigma, config.n, config.level),
        estimate_characteristic(CharKind::quantile, fit.theta_hat, x0, config.quantile_p,
                                cov.sigma, config.n, config.level)};
    const double true_vals[3] = {truth_values.mttf_v, truth_values.rel_v, truth_values.med_v};
    for (int i = 0; i < 3; ++i) {
      cell.cover_direct[i] =
          chars[i].ci_direct.lo <= true_vals[i] && true_vals[i] <= chars[i].ci_direct.hi;
      cell.cover_transformed[i] = chars[i].ci_transformed.lo <= true_vals[i] &&
                                  true_vals[i] <= chars[i].ci_transformed.hi;
    }
    cell.theta = fit.theta_hat;
    cell.converged = fit.converged;
    cell.valid = true;
  } catch (const error&) {
    cell.valid = false;
  }
  return cell;
}

}  // namespace

StudyReport run_study(const StudyConfig& config, const std::vector<ContaminationScheme>& schemes,
                      const ProgressFn& progress) {
  validate(config.truth);
  validate(config.profile);
  if (config.replications < 1 || config.betas.empty())
    raise(errc::invalid_argument, "study needs at least one replication and one beta");

  std::vector<double> betas = config.betas;
  std::sort(betas.begin(), betas.end());

  const double x0 = config.profile.x0;
  TrueValues tv;
  tv.mttf_v = mttf(config.truth, x0);
  tv.rel_v = reliability(config.truth, x0, config.mission_time);
  tv.med_v = quantile(config.truth, x0, config.quantile_p);
  const double lambda_true[3] = {scale_at(config.truth, config.profile.x0),
                                 scale_at(config.truth, config.profile.x1),
                                 scale_at(config.truth, config.profile.x2)};

  StudyReport report;
  report.replications = config.replications;

  const std::size_t m = config.replications;
  const std::size_t n_betas = betas.size();
  int workers = config.workers;
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min<int>(workers, static_cast<int>(m));

  const std::size_t total_cells = schemes.size() * m;
  std::atomic<std::size_t> done{0};

  for (const ContaminationScheme& requested : schemes) {
    ContaminationScheme scheme = requested;
    scheme.contaminated = calibrate_contamination(config.truth, config.profile, scheme);
    scheme.calibrated = true;
    const std::string target_name = to_string(scheme.target);

    std::vector<CellResult> results(m * n_betas);
    std::vector<std::size_t> discards(m, 0);

    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
      for (;;) {
        const std::size_t idx = next.fetch_add(1);
        if (idx >= m) return;
        SsaltSample sample = generate_replication(config, scheme, idx, &discards[idx]);
        const ModelParams* warm = nullptr;
        for (std::size_t b = 0; b < n_betas; ++b) {
          CellResult& cell = results[idx * n_betas + b];
          cell = evaluate_cell(config, sample, betas[b], warm, tv);
          if (cell.valid) warm = &cell.theta;
        }
        const std::size_t so_far = ++done;
        if (progress && (so_far % 25 == 0 || so_far == total_cells)) progress(so_far, total_cells);
      }
    };
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    for (std::size_t idx = 0; idx < m; ++idx) report.discarded += discards[idx];

    // Fixed-order aggregation per beta.
    for (std::size_t b = 0; b < n_betas; ++b) {
      const double beta = betas[b];
      constexpr int kQuantities = 9;
      const char* names[kQuantities] = {"a0",        "a1",        "eta",
                                        "lambda_x0", "lambda_x1", "lambda_x2",
                                        "mttf",      "reliability", "median"};
      double sq_sum[kQuantities] = {0};
      double cover_param_sum[3] = {0};
      double cover_dir_sum[3] = {0};
      double cover_tr_sum[3] = {0};
      std::size_t n_ok = 0;
      for (std::size_t idx = 0; idx < m; ++idx) {
        const CellResult& cell = results[idx * n_betas + b];
        if (!cell.valid) {
          ++report.failed_fits;
          continue;
        }
        ++n_ok;
        const ModelParams& th = cell.theta;
        const double est[kQuantities] = {th.a0,
                                         th.a1,
                                         th.eta,
                                         scale_at(th, config.profile.x0),
                                         scale_at(th, config.profile.x1),
                                         scale_at(th, config.profile.x2),
                                         mttf(th, x0),
                                         reliability(th, x0, config.mission_time),
                                         quantile(th, x0, config.quantile_p)};
        const double truth_q[kQuantities] = {config.truth.a0, config.truth.a1, config.truth.eta,
                                             lambda_true[0],  lambda_true[1],  lambda_true[2],
                                             tv.mttf_v,       tv.rel_v,        tv.med_v};
        for (int q = 0; q < kQuantities; ++q) {
          const double dev = est[q] - truth_q[q];
          sq_sum[q] += dev * dev;
        }
        for (int i = 0; i < 3; ++i) {
          cover_param_sum[i] += cell.cover_param[i] ? 1.0 : 0.0;
          cover_dir_sum[i] += cell.cover_direct[i] ? 1.0 : 0.0;
          cover_tr_sum[i] += cell.cover_transformed[i] ? 1.0 : 0.0;
        }
        report.cloud.push_back(
            CloudRow{target_name, scheme.epsilon, beta, idx, th.a0, th.a1, th.eta});
      }
      const double denom = n_ok > 0 ? static_cast<double>(n_ok) : 1.0;
      for (int q = 0; q < kQuantities; ++q)
        report.rmse.push_back(RmseRow{target_name, scheme.epsilon, beta, names[q],
                                      std::sqrt(sq_sum[q] / denom)});
      const char* param_names[3] = {"a0", "a1", "eta"};
      for (int i = 0; i < 3; ++i)
        report.coverage.push_back(CoverageRow{target_name, scheme.epsilon, beta, param_names[i],
                                              "direct", cover_param_sum[i] / denom});
      const char* char_names[3] = {"mttf", "reliability", "median"};
      for (int i = 0; i < 3; ++i) {
        report.coverage.push_back(CoverageRow{target_name, scheme.epsilon, beta, char_names[i],
                                              "direct", cover_dir_sum[i] / denom});
        report.coverage.push_back(CoverageRow{target_name, scheme.epsilon, beta, char_names[i],
                                              "transformed", cover_tr_sum[i] / denom});
      }
    }
  }
  return report;
}

}  // namespace ssalt
