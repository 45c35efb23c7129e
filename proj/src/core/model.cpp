#include "core/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace ssalt {

void validate(const StressProfile& profile) {
  if (!(profile.tau1 > 0.0 && profile.tau2 > profile.tau1))
    raise(errc::invalid_argument, "stress profile requires 0 < tau1 < tau2");
  if (!(profile.x0 < profile.x1 && profile.x1 < profile.x2))
    raise(errc::invalid_argument, "stress profile requires x0 < x1 < x2");
}

void validate(const ModelParams& params) {
  if (!(params.a1 < 0.0)) raise(errc::invalid_argument, "model requires a1 < 0");
  if (!(params.eta > 0.0)) raise(errc::invalid_argument, "model requires eta > 0");
  if (!std::isfinite(params.a0) || !std::isfinite(params.a1) || !std::isfinite(params.eta))
    raise(errc::invalid_argument, "model parameters must be finite");
}

double scale_at(const ModelParams& params, double stress) {
  return std::exp(params.a0 + params.a1 * stress);
}

double shift_time(const ModelParams& params, const StressProfile& profile) {
  const double ratio = std::exp(params.a1 * (profile.x2 - profile.x1));  // lambda2 / lambda1
  return ratio * profile.tau1 - profile.tau1;
}

namespace {

// Standardized argument of the step-2 Weibull branch at time t.
double step2_arg(const ModelParams& p, const StressProfile& pr, double t) {
  const double lambda1 = scale_at(p, pr.x1);
  const double lambda2 = scale_at(p, pr.x2);
  return (t - pr.tau1) / lambda2 + pr.tau1 / lambda1;
}

}  // namespace

double cdf(const ModelParams& params, const StressProfile& profile, double t) {
  if (t <= 0.0) return 0.0;
  if (t >= profile.tau2) return 1.0;
  double z;
  if (t < profile.tau1) {
    z = t / scale_at(params, profile.x1);
  } else {
    z = step2_arg(params, profile, t);
  }
  return -std::expm1(-std::pow(z, params.eta));
}

double log_pdf(const ModelParams& params, const StressProfile& profile, double t) {
  if (!(t > 0.0 && t < profile.tau2))
    raise(errc::invalid_argument, "density is defined on (0, tau2) only");
  const double eta = params.eta;
  double lambda, z;
  if (t < profile.tau1) {
    lambda = scale_at(params, profile.x1);
    z = t / lambda;
  } else {
    lambda = scale_at(params, profile.x2);
    z = step2_arg(params, profile, t);
  }
  return std::log(eta / lambda) + (eta - 1.0) * std::log(z) - std::pow(z, eta);
}

double pdf(const ModelParams& params, const StressProfile& profile, double t) {
  return std::exp(log_pdf(params, profile, t));
}

double censor_survival(const ModelParams& params, const StressProfile& profile) {
  const double z = step2_arg(params, profile, profile.tau2);
  return std::exp(-std::pow(z, params.eta));
}

double log_likelihood(const ModelParams& params, const StressProfile& profile,
                      const SsaltSample& sample) {
  const std::size_t censored = sample.censored_count();
  double ll = std::lgamma(static_cast<double>(sample.n) + 1.0) -
              std::lgamma(static_cast<double>(censored) + 1.0);
  for (double t : sample.times_step1) ll += log_pdf(params, profile, t);
  for (double t : sample.times_step2) ll += log_pdf(params, profile, t);
  const double z = step2_arg(params, profile, profile.tau2);
  ll -= static_cast<double>(censored) * std::pow(z, params.eta);  // censored * log survival
  return ll;
}

SsaltSample sample_lifetimes(const ModelParams& params, const StressProfile& profile,
                             std::size_t n, std::uint64_t seed) {
  validate(params);
  validate(profile);
  if (n < 1) raise(errc::invalid_argument, "sample size must be >= 1");
  const double lambda1 = scale_at(params, profile.x1);
  const double lambda2 = scale_at(params, profile.x2);
  const double h = shift_time(params, profile);
  const double inv_eta = 1.0 / params.eta;
  const double f_tau1 = -std::expm1(-std::pow(profile.tau1 / lambda1, params.eta));

  Rng rng(seed);
  std::vector<double> times;
  times.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform_open();
    const double m = std::pow(-std::log1p(-u), inv_eta);
    const double t = (u < f_tau1) ? lambda1 * m : lambda2 * m - h;
    if (t < profile.tau2) times.push_back(t);  // t >= tau2 is censored
  }
  return split_sample(std::move(times), n, profile);
}

SsaltSample split_sample(std::vector<double> times, std::size_t n,
                         const StressProfile& profile, std::size_t* dropped) {
  std::sort(times.begin(), times.end());
  SsaltSample out;
  out.n = n;
  std::size_t n_dropped = 0;
  for (double t : times) {
    if (!(t > 0.0)) raise(errc::invalid_argument, "failure times must be positive");
    if (t >= profile.tau2) {
      ++n_dropped;  // survived past the censoring time
    } else if (t < profile.tau1) {
      out.times_step1.push_back(t);
    } else {
      out.times_step2.push_back(t);
    }
  }
  if (out.step1_count() + out.step2_count() + n_dropped > n)
    raise(errc::invalid_argument, "more failure records than units on test");
  if (dropped) *dropped = n_dropped;
  return out;
}

}  // namespace ssalt
