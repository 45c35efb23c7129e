#pragma once

// Test-only numerical oracles, kept independent of the library's evaluation
// paths: tanh-sinh quadrature over the original time variable, the score
// functions written out directly, and brute-force covariance entries.

#include <functional>

#include "core/mat3.hpp"
#include "core/model.hpp"

namespace oracle {

// Double-exponential (tanh-sinh) quadrature on a finite interval; handles
// integrable endpoint singularities.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12);

// Defining time-domain integrals of the power-weighted density kernels.
double power_integral_step1(double alpha, double beta, const ssalt::ModelParams& p,
                            const ssalt::StressProfile& pr);
double power_integral_step2(double alpha, double beta, const ssalt::ModelParams& p,
                            const ssalt::StressProfile& pr);
double log_power_integral_step1(double alpha, int log_exp, double beta,
                                const ssalt::ModelParams& p, const ssalt::StressProfile& pr);
double log_power_integral_step2(double alpha, int log_exp, double beta,
                                const ssalt::ModelParams& p, const ssalt::StressProfile& pr);

// Score of the log-density (and of the log-survival at tau2) with respect to
// (a0, a1, eta), computed from first principles.
ssalt::Vec3 score_step1(const ssalt::ModelParams& p, const ssalt::StressProfile& pr, double t);
ssalt::Vec3 score_step2(const ssalt::ModelParams& p, const ssalt::StressProfile& pr, double t);
ssalt::Vec3 score_atom(const ssalt::ModelParams& p, const ssalt::StressProfile& pr);

// Covariance pieces by direct integration of their definitions:
// J_ij = int u_i u_j f^{1+beta} over both windows + atom term,
// xi_i = int u_i f^{1+beta} over both windows + atom term.
ssalt::Mat3 j_matrix(const ssalt::ModelParams& p, const ssalt::StressProfile& pr, double beta);
ssalt::Vec3 xi_vector(const ssalt::ModelParams& p, const ssalt::StressProfile& pr, double beta);

// Integral of f^{1+beta} over (0, tau2) plus survival^{1+beta}.
double dpd_integral_term(const ssalt::ModelParams& p, const ssalt::StressProfile& pr,
                         double beta);

// Total mass of the mixed distribution: integral of the density plus the atom.
double total_mass(const ssalt::ModelParams& p, const ssalt::StressProfile& pr);

// Mean time to failure as the integral of the survival function.
double mttf_by_quadrature(const ssalt::ModelParams& p, double stress);

}  // namespace oracle
