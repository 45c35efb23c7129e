#pragma once

#include <cstddef>

#include "core/asymptotics.hpp"
#include "core/mat3.hpp"
#include "core/model.hpp"

namespace ssalt {

enum class CharKind { reliability, quantile, mttf };

enum class CiTransform { direct, logit, log_scale };

struct CharacteristicEstimate {
  CharKind kind = CharKind::mttf;
  double arg = 0.0;  // mission time (reliability) or failure probability (quantile)
  double value = 0.0;
  double variance = 0.0;  // asymptotic, per sqrt(n) scale
  Interval ci_direct;
  Interval ci_transformed;  // logit for reliability, log for quantile/MTTF
};

// Survival probability at mission time t under constant stress x.
double reliability(const ModelParams& params, double stress, double t);

// Lifetime quantile: the time q with failure probability p, F(q) = p.
double quantile(const ModelParams& params, double stress, double p);

// Mean time to failure lambda(x) * Gamma(1 + 1/eta).
double mttf(const ModelParams& params, double stress);

// Gradient of the characteristic with respect to (a0, a1, eta).
Vec3 characteristic_gradient(CharKind kind, const ModelParams& params, double stress, double arg);

// Delta-method asymptotic variance grad^T Sigma grad.
double delta_variance(CharKind kind, const ModelParams& params, double stress, const Mat3& sigma,
                      double arg);

// Wald interval on the requested scale, back-transformed. Direct reliability
// intervals are truncated to [0, 1]; the logit form requires value inside
// (0, 1).
Interval characteristic_ci(double value, double variance, std::size_t n, double level,
                           CiTransform transform);

// Point estimate, variance, and both interval forms for one characteristic.
CharacteristicEstimate estimate_characteristic(CharKind kind, const ModelParams& params,
                                               double stress, double arg, const Mat3& sigma,
                                               std::size_t n, double level);

}  // namespace ssalt
