#include "core/stress_integrals.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/quad.hpp"
#include "core/special_functions.hpp"

namespace ssalt {
namespace {

struct Windows {
  double lambda1, lambda2;
  double z_tau1;    // tau1 / lambda1, shared standardized boundary
  double z_censor;  // (tau2 + h) / lambda2
};

Windows windows_of(const ModelParams& p, const StressProfile& pr) {
  Windows w;
  w.lambda1 = scale_at(p, pr.x1);
  w.lambda2 = scale_at(p, pr.x2);
  w.z_tau1 = pr.tau1 / w.lambda1;
  w.z_censor = (pr.tau2 - pr.tau1) / w.lambda2 + w.z_tau1;
  return w;
}

double gamma_order(double alpha, double beta, double eta) {
  return (alpha + (eta - 1.0) * (beta + 1.0) + 1.0) / eta;
}

// integral over (z_lo, z_hi) of z^p [log z]^g exp(-(beta+1) z^eta) dz,
// computed in w = log z. The lower truncation point for z_lo = 0 is chosen so
// the discarded mass is below 1e-18 of the integrand scale at the upper end.
double core_log_integral(double p, int g, double beta, double eta, double z_lo, double z_hi) {
  if (z_hi <= 0.0) return 0.0;
  const double w_hi = std::log(z_hi);
  double w_lo;
  if (z_lo > 0.0) {
    w_lo = std::log(z_lo);
  } else {
    if (p <= -1.0) raise(errc::numerical, "log-power integral diverges at 0");
    double span = 50.0 / (p + 1.0);
    span = (50.0 + g * std::log1p(std::abs(w_hi - span))) / (p + 1.0);
    w_lo = w_hi - span;
  }
  if (w_lo >= w_hi) return 0.0;
  const double bp1 = beta + 1.0;
  const auto f = [=](double w) {
    double lw = 1.0;
    for (int k = 0; k < g; ++k) lw *= w;
    return std::exp((p + 1.0) * w - bp1 * std::exp(eta * w)) * lw;
  };
  QuadResult q = integrate(f, w_lo, w_hi, 1e-11, 1e-300, 4000);
  if (!q.converged) raise(errc::numerical, "log-power integral quadrature did not converge");
  return q.value;
}

}  // namespace

double power_integral_step1(double alpha, double beta, const ModelParams& params,
                            const StressProfile& profile) {
  if (beta < 0.0) raise(errc::invalid_argument, "beta must be >= 0");
  const Windows w = windows_of(params, profile);
  const double eta = params.eta;
  const double s = gamma_order(alpha, beta, eta);
  if (!(s > 0.0)) raise(errc::numerical, "step-1 power integral diverges at 0 (order <= 0)");
  const double upper = std::pow(w.z_tau1, eta) * (beta + 1.0);
  return std::pow(eta / w.lambda1, beta) * std::pow(beta + 1.0, -s) *
         lower_incomplete_gamma(s, upper);
}

double power_integral_step2(double alpha, double beta, const ModelParams& params,
                            const StressProfile& profile) {
  if (beta < 0.0) raise(errc::invalid_argument, "beta must be >= 0");
  const Windows w = windows_of(params, profile);
  const double eta = params.eta;
  const double s = gamma_order(alpha, beta, eta);
  const double lo = std::pow(w.z_tau1, eta) * (beta + 1.0);
  const double hi = std::pow(w.z_censor, eta) * (beta + 1.0);
  return std::pow(eta / w.lambda2, beta) * std::pow(beta + 1.0, -s) *
         generalized_incomplete_gamma(s, lo, hi);
}

double log_power_integral_step1(double alpha, int log_exp, double beta,
                                const ModelParams& params, const StressProfile& profile) {
  if (beta < 0.0 || log_exp < 0) raise(errc::invalid_argument, "invalid log-power integral arguments");
  const Windows w = windows_of(params, profile);
  const double eta = params.eta;
  const double p = alpha + (eta - 1.0) * (beta + 1.0);
  const double core = core_log_integral(p, log_exp, beta, eta, 0.0, w.z_tau1);
  return w.lambda1 * std::pow(eta / w.lambda1, beta + 1.0) * core;
}

double log_power_integral_step2(double alpha, int log_exp, double beta,
                                const ModelParams& params, const StressProfile& profile) {
  if (beta < 0.0 || log_exp < 0) raise(errc::invalid_argument, "invalid log-power integral arguments");
  const Windows w = windows_of(params, profile);
  const double eta = params.eta;
  const double p = alpha + (eta - 1.0) * (beta + 1.0);
  const double core = core_log_integral(p, log_exp, beta, eta, w.z_tau1, w.z_censor);
  return w.lambda2 * std::pow(eta / w.lambda2, beta + 1.0) * core;
}

}  // namespace ssalt
