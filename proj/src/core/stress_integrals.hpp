#pragma once

#include "core/model.hpp"

namespace ssalt {

// Power-weighted integrals of the step-stress density raised to beta + 1.
// They are the building blocks of the DPD loss and of every entry of the
// asymptotic covariance. In the standardized variable z (= t/lambda1 on step
// 1, = (t+h)/lambda2 on step 2):
//
//   step 1:  integral over (0, tau1)    of z^alpha * f_x1(t)^(beta+1) dt
//   step 2:  integral over (tau1, tau2) of z^alpha * f_x2(t+h)^(beta+1) dt
//
// Step 1 evaluates in closed form through the incomplete gamma function and
// requires alpha + (eta-1)(beta+1) + 1 > 0; step 2 has a strictly positive
// lower limit and accepts any real alpha.
double power_integral_step1(double alpha, double beta, const ModelParams& params,
                            const StressProfile& profile);
double power_integral_step2(double alpha, double beta, const ModelParams& params,
                            const StressProfile& profile);

// Same integrals with an extra [log z]^log_exp weight; these appear in every
// eta-derivative. Evaluated by adaptive quadrature after substituting
// z = e^w, which removes the endpoint singularity at 0.
double log_power_integral_step1(double alpha, int log_exp, double beta,
                                const ModelParams& params, const StressProfile& profile);
double log_power_integral_step2(double alpha, int log_exp, double beta,
                                const ModelParams& params, const StressProfile& profile);

}  // namespace ssalt
