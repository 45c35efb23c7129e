#include "ssalt/ssalt.h"

#include <cstring>
#include <exception>
#include <string>

#include "core/asymptotics.hpp"
#include "core/characteristics.hpp"
#include "core/errors.hpp"
#include "core/estimator.hpp"
#include "core/io.hpp"
#include "core/model.hpp"
#include "core/simulation.hpp"

namespace {

thread_local std::string g_last_error;

ssalt_status set_error(ssalt_status status, const char* what) {
  g_last_error = what ? what : "";
  return status;
}

ssalt_status status_of(const ssalt::error& e) {
  switch (e.code()) {
    case ssalt::errc::io:
      return SSALT_ERR_IO;
    case ssalt::errc::insufficient_data:
      return SSALT_ERR_INSUFFICIENT_DATA;
    case ssalt::errc::infeasible_scheme:
      return SSALT_ERR_INFEASIBLE_SCHEME;
    case ssalt::errc::numerical:
      return SSALT_ERR_NUMERICAL;
    case ssalt::errc::invalid_argument:
      return SSALT_ERR_INVALID;
  }
  return SSALT_ERR_NUMERICAL;
}

template <typename Fn>
ssalt_status guarded(Fn&& fn) {
  try {
    fn();
  } catch (const ssalt::error& e) {
    return set_error(status_of(e), e.what());
  } catch (const std::exception& e) {
    return set_error(SSALT_ERR_NUMERICAL, e.what());
  } catch (...) {
    return set_error(SSALT_ERR_NUMERICAL, "unknown error");
  }
  g_last_error.clear();
  return SSALT_OK;
}

ssalt::StressProfile to_core(const ssalt_profile& p) {
  return ssalt::StressProfile{p.x0, p.x1, p.x2, p.tau1, p.tau2};
}

ssalt::ModelParams to_core(const ssalt_params& p) { return ssalt::ModelParams{p.a0, p.a1, p.eta}; }

ssalt_params from_core(const ssalt::ModelParams& p) { return ssalt_params{p.a0, p.a1, p.eta}; }

void copy_mat(const ssalt::Mat3& m, double out[9]) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[3 * i + j] = m[i][j];
}

ssalt::ContaminationTarget to_core(ssalt_target t) {
  switch (t) {
    case SSALT_TARGET_A0:
      return ssalt::ContaminationTarget::a0;
    case SSALT_TARGET_A1:
      return ssalt::ContaminationTarget::a1;
    case SSALT_TARGET_ETA:
      return ssalt::ContaminationTarget::eta;
  }
  ssalt::raise(ssalt::errc::invalid_argument, "unknown contamination target");
}

}  // namespace

struct ssalt_sample {
  ssalt::SsaltSample data;
};

extern "C" {

const char* ssalt_last_error(void) { return g_last_error.c_str(); }

const char* ssalt_version(void) { return "1.0.0"; }

ssalt_status ssalt_scale_at(const ssalt_params* params, double stress, double* out) {
  if (!params || !out) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] { *out = ssalt::scale_at(to_core(*params), stress); });
}

ssalt_status ssalt_shift_time(const ssalt_params* params, const ssalt_profile* profile,
                              double* out) {
  if (!params || !profile || !out) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] { *out = ssalt::shift_time(to_core(*params), to_core(*profile)); });
}

ssalt_status ssalt_cdf(const ssalt_params* params, const ssalt_profile* profile, double t,
                       double* out) {
  if (!params || !profile || !out) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] { *out = ssalt::cdf(to_core(*params), to_core(*profile), t); });
}

ssalt_status ssalt_pdf(const ssalt_params* params, const ssalt_profile* profile, double t,
                       double* out) {
  if (!params || !profile || !out) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] { *out = ssalt::pdf(to_core(*params), to_core(*profile), t); });
}

ssalt_status ssalt_sample_from_times(const ssalt_profile* profile, const double* times,
                                     size_t n_times, size_t n_units, ssalt_sample** out,
                                     size_t* dropped) {
  if (!profile || (!times && n_times > 0) || !out)
    return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] {
    std::vector<double> v(times, times + n_times);
    std::size_t d = 0;
    auto sample = ssalt::split_sample(std::move(v), n_units, to_core(*profile), &d);
    if (dropped) *dropped = d;
    *out = new ssalt_sample{std::move(sample)};
  });
}

ssalt_status ssalt_sample_draw(const ssalt_params* params, const ssalt_profile* profile,
                               size_t n_units, uint64_t seed, ssalt_sample** out) {
  if (!params || !profile || !out) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new ssalt_sample{
        ssalt::sample_lifetimes(to_core(*params), to_core(*profile), n_units, seed)};
  });
}

ssalt_status ssalt_sample_read(const ssalt_profile* profile, const char* path, size_t n_units,
                               ssalt_sample** out, size_t* dropped) {
  if (!profile || !path || !out) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] {
    ssalt::ExperimentConfig cfg;
    cfg.profile = to_core(*profile);
    cfg.n = n_units;
    auto res = ssalt::read_failures(path, cfg);
    if (dropped) *dropped = res.dropped;
    *out = new ssalt_sample{std::move(res.sample)};
  });
}

void ssalt_sample_free(ssalt_sample* sample) { delete sample; }

size_t ssalt_sample_units(const ssalt_sample* sample) { return sample ? sample->data.n : 0; }

size_t ssalt_sample_step1_failures(const ssalt_sample* sample) {
  return sample ? sample->data.step1_count() : 0;
}

size_t ssalt_sample_step2_failures(const ssalt_sample* sample) {
  return sample ? sample->data.step2_count() : 0;
}

size_t ssalt_sample_censored(const ssalt_sample* sample) {
  return sample ? sample->data.censored_count() : 0;
}

size_t ssalt_sample_times(const ssalt_sample* sample, double* out, size_t cap) {
  if (!sample || !out) return 0;
  size_t count = 0;
  for (double t : sample->data.times_step1) {
    if (count >= cap) return count;
    out[count++] = t;
  }
  for (double t : sample->data.times_step2) {
    if (count >= cap) return count;
    out[count++] = t;
  }
  return count;
}

ssalt_status ssalt_log_likelihood(const ssalt_params* params, const ssalt_profile* profile,
                                  const ssalt_sample* sample, double* out) {
  if (!params || !profile || !sample || !out) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded(
      [&] { *out = ssalt::log_likelihood(to_core(*params), to_core(*profile), sample->data); });
}

void ssalt_fit_options_init(ssalt_fit_options* options) {
  if (!options) return;
  options->beta = 0.0;
  options->max_iters = 2000;
  options->tol = 1e-10;
  options->restarts = 5;
  options->has_init = 0;
  options->init = ssalt_params{0.0, -1.0, 1.0};
}

ssalt_status ssalt_fit_mdpde(const ssalt_profile* profile, const ssalt_sample* sample,
                             const ssalt_fit_options* options, ssalt_fit* out) {
  if (!profile || !sample || !options || !out) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] {
    ssalt::FitOptions fo;
    fo.beta = options->beta;
    fo.max_iters = options->max_iters;
    fo.tol = options->tol;
    fo.restarts = options->restarts;
    if (options->has_init) fo.init = to_core(options->init);
    const ssalt::DpdFit fit = ssalt::fit_mdpde(to_core(*profile), sample->data, fo);
    out->beta = fit.beta;
    out->theta = from_core(fit.theta_hat);
    out->objective = fit.objective;
    out->converged = fit.converged ? 1 : 0;
    out->iterations = fit.iterations;
  });
}

ssalt_status ssalt_dpd_objective(const ssalt_params* params, const ssalt_profile* profile,
                                 const ssalt_sample* sample, double beta, double* out) {
  if (!params || !profile || !sample || !out) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = ssalt::dpd_objective(to_core(*params), to_core(*profile), sample->data, beta);
  });
}

ssalt_status ssalt_sandwich_cov(const ssalt_params* params, const ssalt_profile* profile,
                                double beta, ssalt_cov* out) {
  if (!params || !profile || !out) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] {
    const ssalt::SandwichCov cov =
        ssalt::sandwich_covariance(to_core(*params), to_core(*profile), beta);
    out->beta = cov.beta;
    copy_mat(cov.j, out->j);
    copy_mat(cov.k, out->k);
    copy_mat(cov.sigma, out->sigma);
    for (int i = 0; i < 3; ++i) out->xi[i] = cov.xi[i];
  });
}

ssalt_status ssalt_param_ci(const ssalt_fit* fit, const ssalt_cov* cov, size_t n_units,
                            double level, double lo[3], double hi[3]) {
  if (!fit || !cov || !lo || !hi) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] {
    ssalt::DpdFit f;
    f.beta = fit->beta;
    f.theta_hat = to_core(fit->theta);
    ssalt::SandwichCov c;
    c.beta = cov->beta;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c.sigma[i][j] = cov->sigma[3 * i + j];
    const auto cis = ssalt::param_ci(f, c, n_units, level);
    for (int i = 0; i < 3; ++i) {
      lo[i] = cis[i].lo;
      hi[i] = cis[i].hi;
    }
  });
}

ssalt_status ssalt_characteristic(const ssalt_params* params, const ssalt_cov* cov, double stress,
                                  ssalt_char_kind kind, double arg, size_t n_units, double level,
                                  ssalt_char_estimate* out) {
  if (!params || !cov || !out) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] {
    ssalt::Mat3 sigma;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) sigma[i][j] = cov->sigma[3 * i + j];
    ssalt::CharKind ck;
    switch (kind) {
      case SSALT_CHAR_RELIABILITY:
        ck = ssalt::CharKind::reliability;
        break;
      case SSALT_CHAR_QUANTILE:
        ck = ssalt::CharKind::quantile;
        break;
      case SSALT_CHAR_MTTF:
        ck = ssalt::CharKind::mttf;
        break;
      default:
        ssalt::raise(ssalt::errc::invalid_argument, "unknown characteristic kind");
    }
    const ssalt::CharacteristicEstimate est = ssalt::estimate_characteristic(
        ck, to_core(*params), stress, arg, sigma, n_units, level);
    out->value = est.value;
    out->variance = est.variance;
    out->direct_lo = est.ci_direct.lo;
    out->direct_hi = est.ci_direct.hi;
    out->transformed_lo = est.ci_transformed.lo;
    out->transformed_hi = est.ci_transformed.hi;
  });
}

ssalt_status ssalt_fit_table_write(const char* path, const ssalt_fit_row* rows, size_t n_rows) {
  if (!path || !rows || n_rows == 0) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] {
    std::vector<ssalt::FitTableRow> v(n_rows);
    for (size_t i = 0; i < n_rows; ++i) {
      const ssalt_fit_row& r = rows[i];
      v[i] = ssalt::FitTableRow{r.beta, r.a0,  r.a0_lo,  r.a0_hi,  r.a1,          r.a1_lo,
                                r.a1_hi, r.eta, r.eta_lo, r.eta_hi, r.converged != 0};
    }
    ssalt::write_fit_table(std::move(v), path);
  });
}

ssalt_status ssalt_fit_table_read(const char* path, ssalt_fit_row* rows, size_t cap,
                                  size_t* n_read) {
  if (!path || !rows || !n_read) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] {
    const auto v = ssalt::read_fit_table(path);
    const size_t count = v.size() < cap ? v.size() : cap;
    for (size_t i = 0; i < count; ++i) {
      const ssalt::FitTableRow& r = v[i];
      rows[i] = ssalt_fit_row{r.beta, r.a0,  r.a0_lo,  r.a0_hi,  r.a1,       r.a1_lo,
                              r.a1_hi, r.eta, r.eta_lo, r.eta_hi, r.converged ? 1 : 0};
    }
    *n_read = count;
  });
}

void ssalt_study_config_init(ssalt_study_config* config) {
  if (!config) return;
  std::memset(config, 0, sizeof *config);
  config->truth = ssalt_params{2.0, -0.8, 5.5};
  config->profile = ssalt_profile{0.5, 1.0, 2.0, 3.0, 5.0};
  config->n_units = 200;
  config->replications = 500;
  const double betas[6] = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  for (int i = 0; i < 6; ++i) config->betas[i] = betas[i];
  config->n_betas = 6;
  config->epsilons[0] = 0.0;
  config->n_epsilons = 1;
  config->target = SSALT_TARGET_A1;
  config->window_upper = 1.5;
  config->seed = 1;
  config->level = 0.95;
  config->mission_time = 2.0;
  config->quantile_p = 0.5;
  config->workers = 0;
}

ssalt_status ssalt_study_run(const ssalt_study_config* config, const char* out_dir,
                             ssalt_progress_fn progress, void* user) {
  if (!config || !out_dir) return set_error(SSALT_ERR_INVALID, "null argument");
  if (config->n_betas < 1 || config->n_betas > SSALT_MAX_GRID || config->n_epsilons < 1 ||
      config->n_epsilons > SSALT_MAX_GRID)
    return set_error(SSALT_ERR_INVALID, "beta/epsilon grids must have 1..32 entries");
  return guarded([&] {
    ssalt::StudyConfig sc;
    sc.truth = to_core(config->truth);
    sc.profile = to_core(config->profile);
    sc.n = config->n_units;
    sc.replications = config->replications;
    sc.betas.assign(config->betas, config->betas + config->n_betas);
    sc.seed = config->seed;
    sc.level = config->level;
    sc.mission_time = config->mission_time;
    sc.quantile_p = config->quantile_p;
    sc.workers = config->workers;
    std::vector<ssalt::ContaminationScheme> schemes;
    for (size_t i = 0; i < config->n_epsilons; ++i) {
      ssalt::ContaminationScheme scheme;
      scheme.epsilon = config->epsilons[i];
      scheme.target = to_core(config->target);
      scheme.window_upper = config->window_upper;
      schemes.push_back(scheme);
    }
    ssalt::ProgressFn cb;
    if (progress) cb = [&](std::size_t done, std::size_t total) { progress(done, total, user); };
    const ssalt::StudyReport report = ssalt::run_study(sc, schemes, cb);
    ssalt::write_study_report(report, out_dir);
  });
}

ssalt_status ssalt_calibrate_contamination(const ssalt_params* truth,
                                           const ssalt_profile* profile, ssalt_target target,
                                           double epsilon, double window_upper,
                                           ssalt_params* out) {
  if (!truth || !profile || !out) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] {
    ssalt::ContaminationScheme scheme;
    scheme.epsilon = epsilon;
    scheme.target = to_core(target);
    scheme.window_upper = window_upper;
    *out = from_core(ssalt::calibrate_contamination(to_core(*truth), to_core(*profile), scheme));
  });
}

ssalt_status ssalt_config_load(const char* path, ssalt_config* out) {
  if (!path || !out) return set_error(SSALT_ERR_INVALID, "null argument");
  return guarded([&] {
    const ssalt::AppConfig cfg = ssalt::load_config(path);
    std::memset(out, 0, sizeof *out);
    out->profile = ssalt_profile{cfg.profile.x0, cfg.profile.x1, cfg.profile.x2, cfg.profile.tau1,
                                 cfg.profile.tau2};
    out->n_units = cfg.n;
    std::strncpy(out->data_path, cfg.data_path.c_str(), sizeof out->data_path - 1);
    std::strncpy(out->time_unit, cfg.time_unit.c_str(), sizeof out->time_unit - 1);
    const size_t nb = cfg.fit.betas.size() < SSALT_MAX_GRID ? cfg.fit.betas.size() : SSALT_MAX_GRID;
    for (size_t i = 0; i < nb; ++i) out->fit_betas[i] = cfg.fit.betas[i];
    out->n_fit_betas = nb;
    out->fit_level = cfg.fit.level;
    out->fit_restarts = cfg.fit.restarts;
    out->fit_max_iters = cfg.fit.max_iters;
    out->fit_tol = cfg.fit.tol;

    ssalt_study_config_init(&out->simulate);
    out->simulate.truth = from_core(cfg.simulate.truth);
    out->simulate.profile = out->profile;
    out->simulate.n_units = cfg.simulate.n;
    out->simulate.replications = cfg.simulate.replications;
    const size_t nsb =
        cfg.simulate.betas.size() < SSALT_MAX_GRID ? cfg.simulate.betas.size() : SSALT_MAX_GRID;
    for (size_t i = 0; i < nsb; ++i) out->simulate.betas[i] = cfg.simulate.betas[i];
    out->simulate.n_betas = nsb;
    const size_t nse = cfg.simulate.epsilons.size() < SSALT_MAX_GRID ? cfg.simulate.epsilons.size()
                                                                     : SSALT_MAX_GRID;
    for (size_t i = 0; i < nse; ++i) out->simulate.epsilons[i] = cfg.simulate.epsilons[i];
    out->simulate.n_epsilons = nse;
    const ssalt::ContaminationTarget t = ssalt::target_from_string(cfg.simulate.target);
    out->simulate.target = t == ssalt::ContaminationTarget::a0   ? SSALT_TARGET_A0
                           : t == ssalt::ContaminationTarget::a1 ? SSALT_TARGET_A1
                                                                 : SSALT_TARGET_ETA;
    out->simulate.window_upper = cfg.simulate.window_upper;
    out->simulate.seed = cfg.simulate.seed;
    out->simulate.level = cfg.simulate.level;
    out->simulate.mission_time = cfg.simulate.mission_time;
    out->simulate.quantile_p = cfg.simulate.quantile_p;
    out->has_profile = cfg.has_profile ? 1 : 0;
    out->has_data = cfg.has_data ? 1 : 0;
  });
}

}  // extern "C"
