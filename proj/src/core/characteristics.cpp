#include "core/characteristics.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/special_functions.hpp"

namespace ssalt {

double reliability(const ModelParams& params, double stress, double t) {
  if (!(t > 0.0)) return 1.0;
  const double lambda = scale_at(params, stress);
  return std::exp(-std::pow(t / lambda, params.eta));
}

double quantile(const ModelParams& params, double stress, double p) {
  if (!(p > 0.0 && p < 1.0)) raise(errc::invalid_argument, "quantile requires p in (0, 1)");
  const double lambda = scale_at(params, stress);
  return lambda * std::pow(-std::log1p(-p), 1.0 / params.eta);
}

double mttf(const ModelParams& params, double stress) {
  return scale_at(params, stress) * std::tgamma(1.0 + 1.0 / params.eta);
}

Vec3 characteristic_gradient(CharKind kind, const ModelParams& params, double stress,
                             double arg) {
  const double eta = params.eta;
  switch (kind) {
    case CharKind::reliability: {
      const double lambda = scale_at(params, stress);
      const double z = arg / lambda;
      const double z_eta = std::pow(z, eta);
      const double r = std::exp(-z_eta);
      return Vec3{z_eta * r * eta, z_eta * r * eta * stress, -z_eta * r * std::log(z)};
    }
    case CharKind::quantile: {
      const double q = quantile(params, stress, arg);
      const double m = -std::log1p(-arg);  // -log(1 - p) > 0
      return Vec3{q, q * stress, -q * std::log(m) / (eta * eta)};
    }
    case CharKind::mttf: {
      const double e = mttf(params, stress);
      return Vec3{e, e * stress, -e * digamma(1.0 + 1.0 / eta) / (eta * eta)};
    }
  }
  raise(errc::invalid_argument, "unknown characteristic kind");
}

double delta_variance(CharKind kind, const ModelParams& params, double stress, const Mat3& sigma,
                      double arg) {
  const Vec3 grad = characteristic_gradient(kind, params, stress, arg);
  return dot(grad, mul(sigma, grad));
}

Interval characteristic_ci(double value, double variance, std::size_t n, double level,
                           CiTransform transform) {
  if (!(level > 0.0 && level < 1.0)) raise(errc::invalid_argument, "level must be in (0, 1)");
  if (variance < 0.0) raise(errc::invalid_argument, "variance must be >= 0");
  const double z = normal_quantile(0.5 + level / 2.0);
  const double se = z * std::sqrt(variance / static_cast<double>(n));
  switch (transform) {
    case CiTransform::direct:
      return Interval{value - se, value + se};
    case CiTransform::logit: {
      if (!(value > 0.0 && value < 1.0))
        raise(errc::numerical, "logit interval undefined at a boundary reliability");
      const double s = std::exp(se / (value * (1.0 - value)));
      return Interval{value / (value + (1.0 - value) * s),
                      value / (value + (1.0 - value) / s)};
    }
    case CiTransform::log_scale: {
      if (!(value > 0.0)) raise(errc::numerical, "log interval requires a positive estimate");
      const double s = std::exp(se / value);
      return Interval{value / s, value * s};
    }
  }
  raise(errc::invalid_argument, "unknown CI transform");
}

CharacteristicEstimate estimate_characteristic(CharKind kind, const ModelParams& params,
                                               double stress, double arg, const Mat3& sigma,
                                               std::size_t n, double level) {
  CharacteristicEstimate est;
  est.kind = kind;
  est.arg = arg;
  switch (kind) {
    case CharKind::reliability:
      est.value = reliability(params, stress, arg);
      break;
    case CharKind::quantile:
      est.value = quantile(params, stress, arg);
      break;
    case CharKind::mttf:
      est.value = mttf(params, stress);
      break;
  }
  est.variance = delta_variance(kind, params, stress, sigma, arg);
  est.ci_direct = characteristic_ci(est.value, est.variance, n, level, CiTransform::direct);
  if (kind == CharKind::reliability) {
    est.ci_direct.lo = std::max(est.ci_direct.lo, 0.0);
    est.ci_direct.hi = std::min(est.ci_direct.hi, 1.0);
    est.ci_transformed = characteristic_ci(est.value, est.variance, n, level, CiTransform::logit);
  } else {
    est.ci_transformed =
        characteristic_ci(est.value, est.variance, n, level, CiTransform::log_scale);
  }
  return est;
}

}  // namespace ssalt
