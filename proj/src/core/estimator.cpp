#include "core/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "core/errors.hpp"
#include "core/optim.hpp"
#include "core/rng.hpp"
#include "core/stress_integrals.hpp"

namespace ssalt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Precomputed {
  std::vector<double> log_t1;  // logs of step-1 failure times
  double sum_log_t1 = 0.0;
  double comb = 0.0;  // log n! - log (n - n1 - n2)!
};

Precomputed precompute(const SsaltSample& sample) {
  Precomputed pc;
  pc.log_t1.reserve(sample.step1_count());
  for (double t : sample.times_step1) {
    pc.log_t1.push_back(std::log(t));
    pc.sum_log_t1 += pc.log_t1.back();
  }
  pc.comb = std::lgamma(static_cast<double>(sample.n) + 1.0) -
            std::lgamma(static_cast<double>(sample.censored_count()) + 1.0);
  return pc;
}

struct Scales {
  double log_lambda1, log_lambda2, h, z_censor, eta;
};

Scales scales_of(const ModelParams& p, const StressProfile& pr) {
  Scales s;
  s.eta = p.eta;
  s.log_lambda1 = p.a0 + p.a1 * pr.x1;
  s.log_lambda2 = p.a0 + p.a1 * pr.x2;
  const double lambda1 = std::exp(s.log_lambda1);
  const double lambda2 = std::exp(s.log_lambda2);
  s.h = (lambda2 / lambda1) * pr.tau1 - pr.tau1;
  s.z_censor = (pr.tau2 - pr.tau1) / lambda2 + pr.tau1 / lambda1;
  return s;
}

double empirical_term_impl(const ModelParams& p, const StressProfile& pr,
                           const SsaltSample& sample, const Precomputed& pc, double beta) {
  const Scales sc = scales_of(p, pr);
  const double log_eta = std::log(sc.eta);
  double sum = 0.0;
  for (double lt : pc.log_t1) {
    const double z_eta = std::exp(sc.eta * (lt - sc.log_lambda1));
    const double log_f = log_eta - sc.eta * sc.log_lambda1 + (sc.eta - 1.0) * lt - z_eta;
    sum += std::exp(beta * log_f);
  }
  for (double t : sample.times_step2) {
    const double lu = std::log(t + sc.h);
    const double z_eta = std::exp(sc.eta * (lu - sc.log_lambda2));
    const double log_f = log_eta - sc.eta * sc.log_lambda2 + (sc.eta - 1.0) * lu - z_eta;
    sum += std::exp(beta * log_f);
  }
  const double a_eta = std::pow(sc.z_censor, sc.eta);
  sum += static_cast<double>(sample.censored_count()) * std::exp(-beta * a_eta);
  return sum;
}

double log_likelihood_impl(const ModelParams& p, const StressProfile& pr,
                           const SsaltSample& sample, const Precomputed& pc) {
  const Scales sc = scales_of(p, pr);
  const double n1 = static_cast<double>(sample.step1_count());
  const double n2 = static_cast<double>(sample.step2_count());
  double ll = pc.comb + (n1 + n2) * std::log(sc.eta) -
              sc.eta * (n1 * sc.log_lambda1 + n2 * sc.log_lambda2) +
              (sc.eta - 1.0) * pc.sum_log_t1;
  for (double lt : pc.log_t1) ll -= std::exp(sc.eta * (lt - sc.log_lambda1));
  for (double t : sample.times_step2) {
    const double lu = std::log(t + sc.h);
    ll += (sc.eta - 1.0) * lu - std::exp(sc.eta * (lu - sc.log_lambda2));
  }
  ll -= static_cast<double>(sample.censored_count()) * std::pow(sc.z_censor, sc.eta);
  return ll;
}

double objective_impl(const ModelParams& p, const StressProfile& pr, const SsaltSample& sample,
                      const Precomputed& pc, double beta) {
  const double n = static_cast<double>(sample.n);
  if (beta == 0.0) return -log_likelihood_impl(p, pr, sample, pc) / n;
  const double h1 = dpd_integral_term(p, pr, beta);
  const double h2 = empirical_term_impl(p, pr, sample, pc, beta);
  return h1 - (beta + 1.0) / (beta * n) * h2;
}

}  // namespace

double dpd_integral_term(const ModelParams& params, const StressProfile& profile, double beta) {
  if (!(beta > 0.0)) raise(errc::invalid_argument, "dpd_integral_term requires beta > 0");
  const Scales sc = scales_of(params, profile);
  const double survival_pow = std::exp(-(beta + 1.0) * std::pow(sc.z_censor, params.eta));
  return power_integral_step1(0.0, beta, params, profile) +
         power_integral_step2(0.0, beta, params, profile) + survival_pow;
}

double dpd_empirical_term(const ModelParams& params, const StressProfile& profile,
                          const SsaltSample& sample, double beta) {
  if (!(beta > 0.0)) raise(errc::invalid_argument, "dpd_empirical_term requires beta > 0");
  return empirical_term_impl(params, profile, sample, precompute(sample), beta);
}

double dpd_objective(const ModelParams& params, const StressProfile& profile,
                     const SsaltSample& sample, double beta) {
  if (beta < 0.0) raise(errc::invalid_argument, "beta must be >= 0");
  return objective_impl(params, profile, sample, precompute(sample), beta);
}

ModelParams default_initial_guess(const StressProfile& profile, const SsaltSample& sample) {
  const double n = static_cast<double>(sample.n);
  const std::size_t n1 = sample.step1_count();

  // Weibull probability plot on the step-1 failures: below tau1 the mixed CDF
  // is the plain Weibull at stress x1, and the step-1 failures are the first
  // n1 order statistics of all n units.
  double eta0 = 1.5;
  double lambda1 = 0.0;
  if (n1 >= 3) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t j = 0; j < n1; ++j) {
      const double p = (static_cast<double>(j) + 0.5) / n;
      const double x = std::log(sample.times_step1[j]);
      const double y = std::log(-std::log1p(-p));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double denom = sxx - sx * sx / static_cast<double>(n1);
    if (denom > 1e-12) {
      const double slope = (sxy - sx * sy / static_cast<double>(n1)) / denom;
      if (slope > 0.05 && slope < 60.0) {
        eta0 = slope;
        const double intercept = (sy - slope * sx) / static_cast<double>(n1);
        lambda1 = std::exp(-intercept / slope);
      }
    }
  }
  if (!(lambda1 > 0.0) || !std::isfinite(lambda1)) {
    // match the empirical mass below tau1
    const double q = std::min((static_cast<double>(n1) + 0.5) / n, 0.99);
    lambda1 = profile.tau1 / std::pow(-std::log1p(-q), 1.0 / eta0);
  }

  // Step-2 failures pin lambda2: each one satisfies
  // (t - tau1)/lambda2 + tau1/lambda1 = (-log(1-p))^{1/eta}.
  std::vector<double> candidates;
  const double z_tau1 = profile.tau1 / lambda1;
  for (std::size_t j = 0; j < sample.step2_count(); ++j) {
    const double p = (static_cast<double>(n1 + j) + 0.5) / n;
    const double m = std::pow(-std::log1p(-p), 1.0 / eta0);
    const double denom = m - z_tau1;
    if (denom > 1e-8 * std::max(z_tau1, 1.0)) {
      const double cand = (sample.times_step2[j] - profile.tau1) / denom;
      if (cand > 0.0 && std::isfinite(cand)) candidates.push_back(cand);
    }
  }
  double lambda2;
  if (!candidates.empty()) {
    std::nth_element(candidates.begin(), candidates.begin() + candidates.size() / 2,
                     candidates.end());
    lambda2 = candidates[candidates.size() / 2];
  } else {
    lambda2 = 0.5 * lambda1;
  }

  double a1 = std::log(lambda2 / lambda1) / (profile.x2 - profile.x1);
  const double a1_floor = -std::log(0.9) / (profile.x2 - profile.x1);
  if (!(a1 < -a1_floor)) a1 = -a1_floor;  // keep strictly inside the space
  const double a0 = std::log(lambda1) - a1 * profile.x1;
  return ModelParams{a0, a1, eta0};
}

DpdFit fit_mdpde(const StressProfile& profile, const SsaltSample& sample,
                 const FitOptions& options) {
  validate(profile);
  if (options.beta < 0.0) raise(errc::invalid_argument, "beta must be >= 0");
  if (!(options.tol > 0.0) || options.restarts < 1 || options.max_iters < 1)
    raise(errc::invalid_argument, "invalid fit options");
  if (sample.step1_count() == 0 || sample.step2_count() == 0)
    raise(errc::insufficient_data, "fit requires at least one failure in each stress interval");

  const Precomputed pc = precompute(sample);
  const auto eval = [&](const Vec3d& v) -> double {
    const ModelParams p{v[0], -std::exp(v[1]), std::exp(v[2])};
    if (!std::isfinite(p.a1) || !std::isfinite(p.eta) || p.eta <= 0.0 || p.a1 >= 0.0) return kInf;
    double value;
    try {
      value = objective_impl(p, profile, sample, pc, options.beta);
    } catch (const error&) {
      return kInf;
    }
    return std::isfinite(value) ? value : kInf;
  };

  ModelParams init = options.init.value_or(default_initial_guess(profile, sample));
  if (!(init.a1 < 0.0)) init.a1 = -1e-3;
  if (!(init.eta > 0.0)) init.eta = 1.0;
  const Vec3d v0{init.a0, std::log(-init.a1), std::log(init.eta)};

  NelderMeadOptions nm;
  nm.max_iters = options.max_iters;
  nm.ftol = options.tol;
  nm.xtol = std::max(1e3 * options.tol, 1e-8);
  nm.initial_step = 0.3;

  NelderMeadResult best;
  best.fx = kInf;
  int total_iters = 0;
  for (int r = 0; r < options.restarts; ++r) {
    Vec3d start = v0;
    if (r > 0) {
      Rng jitter = Rng::stream(0x5eedf17ull, static_cast<std::uint64_t>(r));
      for (double& c : start) c += jitter.uniform(-0.6, 0.6);
    }
    NelderMeadResult run = nelder_mead(eval, start, nm);
    total_iters += run.iterations;
    if (run.fx < best.fx) best = run;
  }
  if (!std::isfinite(best.fx)) raise(errc::numerical, "DPD loss not finite at any starting point");

  // Tight re-run from the best vertex sharpens the minimizer.
  NelderMeadOptions polish = nm;
  polish.initial_step = 1e-3;
  NelderMeadResult fin = nelder_mead(eval, best.x, polish);
  total_iters += fin.iterations;
  if (fin.fx > best.fx) fin = best;

  DpdFit out;
  out.beta = options.beta;
  out.theta_hat = ModelParams{fin.x[0], -std::exp(fin.x[1]), std::exp(fin.x[2])};
  out.objective = fin.fx;
  out.converged = fin.converged;
  out.iterations = total_iters;
  return out;
}

}  // namespace ssalt
