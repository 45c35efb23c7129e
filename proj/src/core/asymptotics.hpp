#pragma once

#include <cstddef>

#include "core/estimator.hpp"
#include "core/mat3.hpp"
#include "core/model.hpp"

namespace ssalt {

// Sandwich covariance Sigma = J^{-1} K J^{-1} of the MDPDE, with
// K = J(2 beta) - xi xi^T. All pieces evaluate in closed form through the
// power and log-power integrals plus the censoring-atom terms.
struct SandwichCov {
  double beta = 0.0;
  Mat3 j{};
  Vec3 xi{};
  Mat3 k{};
  Mat3 sigma{};
};

Mat3 j_matrix(const ModelParams& params, const StressProfile& profile, double beta);
Vec3 xi_vector(const ModelParams& params, const StressProfile& profile, double beta);
Mat3 k_matrix(const ModelParams& params, const StressProfile& profile, double beta);

// Assembles J, xi, K and the sandwich product. Raises a numerical error when
// J is singular or has condition number above 1e12.
SandwichCov sandwich_covariance(const ModelParams& params, const StressProfile& profile,
                                double beta);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Wald confidence intervals theta_i +/- z * sqrt(Sigma_ii / n) per coordinate.
std::array<Interval, 3> param_ci(const DpdFit& fit, const SandwichCov& cov, std::size_t n,
                                 double level);

}  // namespace ssalt
