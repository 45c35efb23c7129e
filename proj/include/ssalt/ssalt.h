/*
 * ssalt - robust estimation for simple step-stress accelerated life tests
 * with Weibull lifetimes under Type-I censoring.
 *
 * C API of the shared library. All functions return ssalt_status; on failure
 * ssalt_last_error() holds a thread-local message for the failing call.
 * Matrices are row-major 3x3 over the parameter order (a0, a1, eta).
 */
#ifndef SSALT_H
#define SSALT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ssalt_status {
  SSALT_OK = 0,
  SSALT_ERR_IO = 1,
  SSALT_ERR_INSUFFICIENT_DATA = 2,
  SSALT_ERR_INFEASIBLE_SCHEME = 3,
  SSALT_ERR_NUMERICAL = 4,
  SSALT_ERR_INVALID = 5
} ssalt_status;

const char* ssalt_last_error(void);
const char* ssalt_version(void);

/* Stress geometry: nominal stress x0 < x1 < x2, change time tau1, censoring
 * time tau2 (0 < tau1 < tau2). */
typedef struct ssalt_profile {
  double x0, x1, x2, tau1, tau2;
} ssalt_profile;

/* theta = (a0, a1, eta); Weibull scale at stress x is exp(a0 + a1 x). */
typedef struct ssalt_params {
  double a0, a1, eta;
} ssalt_params;

/* ---- model ---- */

ssalt_status ssalt_scale_at(const ssalt_params* params, double stress, double* out);
ssalt_status ssalt_shift_time(const ssalt_params* params, const ssalt_profile* profile,
                              double* out);
ssalt_status ssalt_cdf(const ssalt_params* params, const ssalt_profile* profile, double t,
                       double* out);
ssalt_status ssalt_pdf(const ssalt_params* params, const ssalt_profile* profile, double t,
                       double* out);

/* ---- samples ---- */

typedef struct ssalt_sample ssalt_sample; /* opaque */

/* Canonicalizes raw failure times: sorts, splits at tau1, moves times at or
 * past tau2 into the censored count (reported via *dropped, may be NULL). */
ssalt_status ssalt_sample_from_times(const ssalt_profile* profile, const double* times,
                                     size_t n_times, size_t n_units, ssalt_sample** out,
                                     size_t* dropped);
/* Inverse-CDF sampling of n_units lifetimes; deterministic per seed. */
ssalt_status ssalt_sample_draw(const ssalt_params* params, const ssalt_profile* profile,
                               size_t n_units, uint64_t seed, ssalt_sample** out);
/* Reads a newline-delimited failure-time file ('#' comments). */
ssalt_status ssalt_sample_read(const ssalt_profile* profile, const char* path, size_t n_units,
                               ssalt_sample** out, size_t* dropped);
void ssalt_sample_free(ssalt_sample* sample);

size_t ssalt_sample_units(const ssalt_sample* sample);
size_t ssalt_sample_step1_failures(const ssalt_sample* sample);
size_t ssalt_sample_step2_failures(const ssalt_sample* sample);
size_t ssalt_sample_censored(const ssalt_sample* sample);
/* Copies up to cap failure times (ascending); returns the number copied. */
size_t ssalt_sample_times(const ssalt_sample* sample, double* out, size_t cap);

ssalt_status ssalt_log_likelihood(const ssalt_params* params, const ssalt_profile* profile,
                                  const ssalt_sample* sample, double* out);

/* ---- fitting ---- */

typedef struct ssalt_fit_options {
  double beta;   /* DPD tuning parameter; 0 = maximum likelihood */
  int max_iters; /* per simplex run */
  double tol;
  int restarts;
  int has_init;
  ssalt_params init;
} ssalt_fit_options;
void ssalt_fit_options_init(ssalt_fit_options* options);

typedef struct ssalt_fit {
  double beta;
  ssalt_params theta;
  double objective;
  int converged;
  int iterations;
} ssalt_fit;

ssalt_status ssalt_fit_mdpde(const ssalt_profile* profile, const ssalt_sample* sample,
                             const ssalt_fit_options* options, ssalt_fit* out);
ssalt_status ssalt_dpd_objective(const ssalt_params* params, const ssalt_profile* profile,
                                 const ssalt_sample* sample, double beta, double* out);

/* ---- asymptotic covariance ---- */

typedef struct ssalt_cov {
  double beta;
  double j[9];
  double xi[3];
  double k[9];
  double sigma[9];
} ssalt_cov;

ssalt_status ssalt_sandwich_cov(const ssalt_params* params, const ssalt_profile* profile,
                                double beta, ssalt_cov* out);
ssalt_status ssalt_param_ci(const ssalt_fit* fit, const ssalt_cov* cov, size_t n_units,
                            double level, double lo[3], double hi[3]);

/* ---- lifetime characteristics at a constant stress ---- */

typedef enum ssalt_char_kind {
  SSALT_CHAR_RELIABILITY = 0, /* arg = mission time */
  SSALT_CHAR_QUANTILE = 1,    /* arg = failure probability */
  SSALT_CHAR_MTTF = 2         /* arg ignored */
} ssalt_char_kind;

typedef struct ssalt_char_estimate {
  double value;
  double variance; /* asymptotic, per sqrt(n) scale */
  double direct_lo, direct_hi;
  double transformed_lo, transformed_hi; /* logit (reliability) or log scale */
} ssalt_char_estimate;

ssalt_status ssalt_characteristic(const ssalt_params* params, const ssalt_cov* cov, double stress,
                                  ssalt_char_kind kind, double arg, size_t n_units, double level,
                                  ssalt_char_estimate* out);

/* ---- fit table persistence ---- */

typedef struct ssalt_fit_row {
  double beta;
  double a0, a0_lo, a0_hi;
  double a1, a1_lo, a1_hi;
  double eta, eta_lo, eta_hi;
  int converged;
} ssalt_fit_row;

ssalt_status ssalt_fit_table_write(const char* path, const ssalt_fit_row* rows, size_t n_rows);
ssalt_status ssalt_fit_table_read(const char* path, ssalt_fit_row* rows, size_t cap,
                                  size_t* n_read);

/* ---- Monte-Carlo contamination study ---- */

typedef enum ssalt_target {
  SSALT_TARGET_A0 = 0,
  SSALT_TARGET_A1 = 1,
  SSALT_TARGET_ETA = 2
} ssalt_target;

#define SSALT_MAX_GRID 32

typedef struct ssalt_study_config {
  ssalt_params truth;
  ssalt_profile profile;
  size_t n_units;
  size_t replications;
  double betas[SSALT_MAX_GRID];
  size_t n_betas;
  double epsilons[SSALT_MAX_GRID];
  size_t n_epsilons;
  ssalt_target target;
  double window_upper;
  uint64_t seed;
  double level;
  double mission_time;
  double quantile_p;
  int workers; /* 0 = hardware concurrency */
} ssalt_study_config;
void ssalt_study_config_init(ssalt_study_config* config);

typedef void (*ssalt_progress_fn)(size_t done, size_t total, void* user);

/* Runs the study and writes rmse.csv, coverage.csv, cloud.csv and
 * study_log.csv into out_dir. Output bytes depend only on the config. */
ssalt_status ssalt_study_run(const ssalt_study_config* config, const char* out_dir,
                             ssalt_progress_fn progress, void* user);

/* Solves the outlier-window calibration equation for one target parameter. */
ssalt_status ssalt_calibrate_contamination(const ssalt_params* truth,
                                           const ssalt_profile* profile, ssalt_target target,
                                           double epsilon, double window_upper,
                                           ssalt_params* out);

/* ---- experiment configuration files ---- */

typedef struct ssalt_config {
  ssalt_profile profile;
  size_t n_units;
  char data_path[1024];
  char time_unit[64];
  double fit_betas[SSALT_MAX_GRID];
  size_t n_fit_betas;
  double fit_level;
  int fit_restarts;
  int fit_max_iters;
  double fit_tol;
  ssalt_study_config simulate;
  int has_profile;
  int has_data;
} ssalt_config;

ssalt_status ssalt_config_load(const char* path, ssalt_config* out);

#ifdef __cplusplus
}
#endif

#endif /* SSALT_H */
