#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ssalt {

// Experiment geometry of a simple step-stress test: nominal stress x0, the
// two test stresses, the stress-change time tau1 and the censoring time tau2.
struct StressProfile {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
};

// Model parameters theta = (a0, a1, eta); the Weibull scale at stress x is
// exp(a0 + a1 x), so a1 < 0 (lifetimes shorten under stress) and eta > 0.
struct ModelParams {
  double a0 = 0.0;
  double a1 = -1.0;
  double eta = 1.0;
};

// Observed failure times split by stress interval plus the censored count
// (n minus the number of recorded failures).
struct SsaltSample {
  std::size_t n = 0;
  std::vector<double> times_step1;  // sorted, in (0, tau1)
  std::vector<double> times_step2;  // sorted, in [tau1, tau2)

  std::size_t step1_count() const { return times_step1.size(); }
  std::size_t step2_count() const { return times_step2.size(); }
  std::size_t censored_count() const { return n - step1_count() - step2_count(); }
};

void validate(const StressProfile& profile);
void validate(const ModelParams& params);

double scale_at(const ModelParams& params, double stress);

// Time translation aligning the step-2 distribution with the wear accrued in
// step 1: h = (lambda2/lambda1) tau1 - tau1. The CDF is continuous at tau1.
double shift_time(const ModelParams& params, const StressProfile& profile);

// CDF of the observable lifetime min(T, tau2): continuous on (0, tau2) with a
// point mass at tau2.
double cdf(const ModelParams& params, const StressProfile& profile, double t);

// Density of the continuous component; defined on (0, tau2) only.
double pdf(const ModelParams& params, const StressProfile& profile, double t);
double log_pdf(const ModelParams& params, const StressProfile& profile, double t);

// Survival probability at the censoring time, i.e. the size of the atom.
double censor_survival(const ModelParams& params, const StressProfile& profile);

// Full log-likelihood including the multinomial-order constant
// log(n!) - log((n - n1 - n2)!).
double log_likelihood(const ModelParams& params, const StressProfile& profile,
                      const SsaltSample& sample);

// Exact inverse-CDF sampling of n lifetimes, censored at tau2. Deterministic
// for a given seed.
SsaltSample sample_lifetimes(const ModelParams& params, const StressProfile& profile,
                             std::size_t n, std::uint64_t seed);

// Canonicalizes raw failure times into a sample: sorts, assigns t >= tau1 to
// step 2, and moves t >= tau2 into the censored count (reported via
// *dropped). Rejects nonpositive times and more failures than n.
SsaltSample split_sample(std::vector<double> times, std::size_t n,
                         const StressProfile& profile, std::size_t* dropped = nullptr);

}  // namespace ssalt
