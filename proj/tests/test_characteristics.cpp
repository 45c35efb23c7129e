#include <cmath>

#include "core/asymptotics.hpp"
#include "core/characteristics.hpp"
#include "core/errors.hpp"
#include "core/rng.hpp"
#include "doctest.h"
#include "oracle.hpp"
#include "testutil.hpp"

using namespace ssalt;

namespace {
const ModelParams kTruth = testutil::baseline_params();
const StressProfile kProfile = testutil::baseline_profile();
}  // namespace

TEST_CASE("reliability basics") {
  CHECK(reliability(kTruth, 0.5, 1e-300) == doctest::Approx(1.0).epsilon(1e-12));
  const ModelParams expo{1.0, -0.5, 1.0};
  const double lambda = scale_at(expo, 0.5);
  CHECK(reliability(expo, 0.5, 2.0) == doctest::Approx(std::exp(-2.0 / lambda)).epsilon(1e-13));
}

TEST_CASE("quantile basics and round trip") {
  // failure probability 1 - e^{-1} puts the quantile at the scale
  const double p_scale = 1.0 - std::exp(-1.0);
  CHECK(quantile(kTruth, 0.5, p_scale) ==
        doctest::Approx(scale_at(kTruth, 0.5)).epsilon(1e-12));
  double prev = 0.0;
  for (double p : {0.05, 0.2, 0.5, 0.8, 0.95}) {
    const double q = quantile(kTruth, 0.5, p);
    CHECK(q > prev);
    prev = q;
    CHECK(std::abs((1.0 - reliability(kTruth, 0.5, q)) - p) < 1e-12);
  }
  CHECK_THROWS_AS(quantile(kTruth, 0.5, 0.0), error);
}

TEST_CASE("mttf closed form against the survival integral") {
  CHECK(mttf(ModelParams{1.0, -0.5, 1.0}, 0.5) ==
        doctest::Approx(scale_at(ModelParams{1.0, -0.5, 1.0}, 0.5)).epsilon(1e-13));
  for (const ModelParams& p : {kTruth, ModelParams{1.2, -0.3, 0.9}}) {
    const double by_quad = oracle::mttf_by_quadrature(p, 0.5);
    CHECK(testutil::rel_err(mttf(p, 0.5), by_quad) < 1e-8);
  }
}

TEST_CASE("characteristic gradients match central differences") {
  const double step = 1e-6;
  const struct {
    CharKind kind;
    double arg;
  } cases[] = {{CharKind::reliability, 2.0}, {CharKind::quantile, 0.5}, {CharKind::mttf, 0.0}};
  for (const auto& c : cases) {
    const Vec3 grad = characteristic_gradient(c.kind, kTruth, 0.5, c.arg);
    for (int i = 0; i < 3; ++i) {
      ModelParams up = kTruth, dn = kTruth;
      (i == 0 ? up.a0 : i == 1 ? up.a1 : up.eta) += step;
      (i == 0 ? dn.a0 : i == 1 ? dn.a1 : dn.eta) -= step;
      const auto value = [&](const ModelParams& p) {
        switch (c.kind) {
          case CharKind::reliability:
            return reliability(p, 0.5, c.arg);
          case CharKind::quantile:
            return quantile(p, 0.5, c.arg);
          case CharKind::mttf:
            return mttf(p, 0.5);
        }
        return 0.0;
      };
      const double fd = (value(up) - value(dn)) / (2.0 * step);
      CHECK(testutil::close(grad[i], fd, 1e-6, 1e-9));
    }
  }
}

TEST_CASE("delta variance is zero under a zero covariance") {
  CHECK(delta_variance(CharKind::mttf, kTruth, 0.5, zero3(), 0.0) == 0.0);
}

TEST_CASE("interval transforms respect their ranges") {
  Rng rng(5150);
  for (int k = 0; k < 200; ++k) {
    const double value = rng.uniform(0.02, 0.98);
    const double var = rng.uniform(0.0, 4.0);
    const std::size_t n = 20 + rng.next() % 500;
    const Interval logit = characteristic_ci(value, var, n, 0.95, CiTransform::logit);
    CHECK(logit.lo >= 0.0);
    CHECK(logit.hi <= 1.0);
    CHECK(logit.lo <= value);
    CHECK(logit.hi >= value);
    const double pos = rng.uniform(0.1, 20.0);
    const Interval log_iv = characteristic_ci(pos, var, n, 0.95, CiTransform::log_scale);
    CHECK(log_iv.lo > 0.0);
    CHECK(log_iv.lo <= pos);
    CHECK(log_iv.hi >= pos);
  }
}

TEST_CASE("zero variance collapses all interval forms to the point") {
  const Interval d = characteristic_ci(0.4, 0.0, 100, 0.95, CiTransform::direct);
  const Interval l = characteristic_ci(0.4, 0.0, 100, 0.95, CiTransform::logit);
  const Interval g = characteristic_ci(0.4, 0.0, 100, 0.95, CiTransform::log_scale);
  CHECK(d.lo == d.hi);
  CHECK(l.lo == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(l.hi == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(g.lo == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("boundary reliability cannot be logit-transformed") {
  CHECK_THROWS_AS(characteristic_ci(1.0, 0.5, 100, 0.95, CiTransform::logit), error);
  CHECK_THROWS_AS(characteristic_ci(0.0, 0.5, 100, 0.95, CiTransform::logit), error);
}

TEST_CASE("solar-lighting characteristics at the verified fits") {
  const SsaltSample s = testutil::solar_sample();
  const StressProfile pr = testutil::solar_profile();

  FitOptions opt;
  opt.beta = 0.0;
  const DpdFit mle = fit_mdpde(pr, s, opt);
  const SandwichCov cov0 = sandwich_covariance(mle.theta_hat, pr, 0.0);

  // frozen from a converged run at the verified optimum
  const CharacteristicEstimate mttf0 =
      estimate_characteristic(CharKind::mttf, mle.theta_hat, 288.0, 0.0, cov0.sigma, s.n, 0.95);
  CHECK(testutil::rel_err(mttf0.value, 8.30009) < 2e-3);
  CHECK(testutil::rel_err(mttf0.ci_direct.lo, 3.5441) < 5e-3);
  CHECK(testutil::rel_err(mttf0.ci_direct.hi, 13.0561) < 5e-3);
  CHECK(testutil::rel_err(mttf0.ci_transformed.lo, 4.6798) < 5e-3);
  CHECK(testutil::rel_err(mttf0.ci_transformed.hi, 14.7209) < 5e-3);

  const CharacteristicEstimate rel288 = estimate_characteristic(
      CharKind::reliability, mle.theta_hat, 288.0, 5.0, cov0.sigma, s.n, 0.95);
  CHECK(std::abs(rel288.value - 0.62049) < 2e-3);
  const CharacteristicEstimate rel293 = estimate_characteristic(
      CharKind::reliability, mle.theta_hat, 293.0, 5.0, cov0.sigma, s.n, 0.95);
  CHECK(std::abs(rel293.value - 0.54095) < 2e-3);
  const CharacteristicEstimate med0 = estimate_characteristic(
      CharKind::quantile, mle.theta_hat, 288.0, 0.5, cov0.sigma, s.n, 0.95);
  CHECK(testutil::rel_err(med0.value, 6.70552) < 2e-3);

  // raising the temperature shortens every lifetime summary
  CHECK(mttf(mle.theta_hat, 288.0) > mttf(mle.theta_hat, 293.0));
  CHECK(rel288.value > rel293.value);
  CHECK(quantile(mle.theta_hat, 288.0, 0.5) > quantile(mle.theta_hat, 293.0, 0.5));

  opt.beta = 1.0;
  const DpdFit fit1 = fit_mdpde(pr, s, opt);
  CHECK(testutil::rel_err(fit1.theta_hat.eta, 1.224444) < 5e-4);
  CHECK(testutil::rel_err(quantile(fit1.theta_hat, 293.0, 0.5), 5.51224) < 2e-3);
  CHECK(testutil::rel_err(mttf(fit1.theta_hat, 288.0), 8.52894) < 2e-3);
}

TEST_CASE("reliability direct intervals are truncated to [0, 1]") {
  const SandwichCov cov = sandwich_covariance(kTruth, kProfile, 0.2);
  // n = 2 makes the raw direct interval overshoot both ends
  const CharacteristicEstimate est =
      estimate_characteristic(CharKind::reliability, kTruth, 0.5, 2.0, cov.sigma, 2, 0.999);
  CHECK(est.ci_direct.lo >= 0.0);
  CHECK(est.ci_direct.hi <= 1.0);
  CHECK(est.ci_transformed.lo >= 0.0);
  CHECK(est.ci_transformed.hi <= 1.0);
}
