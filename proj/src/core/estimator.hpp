#pragma once

#include <cstddef>
#include <optional>

#include "core/model.hpp"

namespace ssalt {

struct FitOptions {
  double beta = 0.0;  // DPD tuning parameter; 0 selects the MLE path
  int max_iters = 2000;
  double tol = 1e-10;
  std::optional<ModelParams> init;
  int restarts = 5;
};

struct DpdFit {
  double beta = 0.0;
  ModelParams theta_hat;
  double objective = 0.0;  // final DPD loss, or -loglik/n when beta == 0
  bool converged = false;
  int iterations = 0;
};

// Integral part of the DPD loss: the integral of f^{beta+1} over both stress
// windows plus survival^{beta+1}. Closed form through the power integrals.
double dpd_integral_term(const ModelParams& params, const StressProfile& profile, double beta);

// Empirical part: sum of f^beta over the observed failures plus
// censored * survival^beta.
double dpd_empirical_term(const ModelParams& params, const StressProfile& profile,
                          const SsaltSample& sample, double beta);

// DPD loss H_n for beta > 0; -loglik/n for beta == 0 (the KL limit).
double dpd_objective(const ModelParams& params, const StressProfile& profile,
                     const SsaltSample& sample, double beta);

// Data-driven starting point: Weibull probability-plot regression on the
// step-1 failures for (scale, shape), then a slope estimate from the step-2
// failures.
ModelParams default_initial_guess(const StressProfile& profile, const SsaltSample& sample);

// Minimizes the DPD loss over the reparametrization
// (a0, a1, eta) = (v0, -exp(v1), exp(v2)), which keeps iterates inside the
// parameter space. Multi-start with deterministic jitter; requires failures
// in both stress intervals.
DpdFit fit_mdpde(const StressProfile& profile, const SsaltSample& sample,
                 const FitOptions& options);

}  // namespace ssalt
