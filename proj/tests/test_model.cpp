#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/estimator.hpp"
#include "core/model.hpp"
#include "core/rng.hpp"
#include "doctest.h"
#include "oracle.hpp"
#include "testutil.hpp"

using namespace ssalt;

namespace {
const ModelParams kTruth = testutil::baseline_params();
const StressProfile kProfile = testutil::baseline_profile();
}  // namespace

TEST_CASE("scale_at evaluates the log-linear stress link") {
  CHECK(scale_at(ModelParams{0.0, -1.0, 1.0}, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(scale_at(ModelParams{2.0, -0.8, 5.5}, 1.0) ==
        doctest::Approx(3.3201169227365472).epsilon(1e-14));
  // solar-lighting scale at the first test temperature
  CHECK(scale_at(ModelParams{14.384, -0.044, 2.793}, 293.0) ==
        doctest::Approx(std::exp(14.384 - 0.044 * 293.0)).epsilon(1e-14));
  // strictly decreasing in stress for a1 < 0
  CHECK(scale_at(kTruth, 1.0) > scale_at(kTruth, 1.5));
  CHECK(scale_at(kTruth, 1.5) > scale_at(kTruth, 2.0));
}

TEST_CASE("shift_time value and continuity of the CDF at tau1") {
  const double h = shift_time(kTruth, kProfile);
  CHECK(h == doctest::Approx(3.0 * std::exp(-0.8) - 3.0).epsilon(1e-14));
  CHECK(h == doctest::Approx(-1.652013107648334).epsilon(1e-12));

  // F_{x1}(tau1) = F_{x2}(tau1 + h)
  const double lambda1 = scale_at(kTruth, kProfile.x1);
  const double lambda2 = scale_at(kTruth, kProfile.x2);
  const double left = 1.0 - std::exp(-std::pow(kProfile.tau1 / lambda1, kTruth.eta));
  const double right = 1.0 - std::exp(-std::pow((kProfile.tau1 + h) / lambda2, kTruth.eta));
  CHECK(std::abs(left - right) < 1e-12);

  // a1 -> 0- collapses the shift
  CHECK(std::abs(shift_time(ModelParams{2.0, -1e-12, 5.5}, kProfile)) < 1e-10);
}

TEST_CASE("cdf boundary values and tau1 continuity") {
  CHECK(cdf(kTruth, kProfile, 0.0) == 0.0);
  CHECK(cdf(kTruth, kProfile, -1.0) == 0.0);
  CHECK(cdf(kTruth, kProfile, kProfile.tau2) == 1.0);
  CHECK(cdf(kTruth, kProfile, kProfile.tau2 + 5.0) == 1.0);
  const double below = cdf(kTruth, kProfile, kProfile.tau1 - 1e-13);
  const double above = cdf(kTruth, kProfile, kProfile.tau1 + 1e-13);
  CHECK(std::abs(below - above) < 1e-12);
  // non-decreasing on a grid
  double prev = 0.0;
  for (double t = 0.0; t <= kProfile.tau2 + 0.5; t += 0.01) {
    const double v = cdf(kTruth, kProfile, t);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
}

TEST_CASE("cdf with eta = 1 and equal scales is a single exponential") {
  // x1 == x2 is outside the profile invariant, so approach it with a1 -> 0-.
  const ModelParams p{std::log(2.0), -1e-13, 1.0};
  for (double t : {0.3, 1.0, 2.9, 3.5, 4.9}) {
    CHECK(cdf(p, kProfile, t) == doctest::Approx(1.0 - std::exp(-t / 2.0)).epsilon(1e-9));
  }
}

TEST_CASE("cdf is continuous at tau1 for random admissible parameters") {
  Rng rng(13579);
  for (int k = 0; k < 25; ++k) {
    const ModelParams p{rng.uniform(0.0, 3.0), -rng.uniform(0.05, 1.5), rng.uniform(0.3, 8.0)};
    const double below = cdf(p, kProfile, kProfile.tau1 - 1e-13);
    const double above = cdf(p, kProfile, kProfile.tau1 + 1e-13);
    CHECK(std::abs(below - above) < 1e-12);
  }
}

TEST_CASE("pdf matches a central difference of the cdf") {
  const double t = 1.7;
  const double dt = 1e-6;
  const double fd = (cdf(kTruth, kProfile, t + dt) - cdf(kTruth, kProfile, t - dt)) / (2.0 * dt);
  CHECK(testutil::rel_err(pdf(kTruth, kProfile, t), fd) < 1e-6);
}

TEST_CASE("pdf is the exponential density on step 1 when eta = 1") {
  const ModelParams p{1.1, -0.4, 1.0};
  const double lambda1 = scale_at(p, kProfile.x1);
  for (double t : {0.2, 1.1, 2.8}) {
    CHECK(pdf(p, kProfile, t) ==
          doctest::Approx(std::exp(-t / lambda1) / lambda1).epsilon(1e-12));
  }
}

TEST_CASE("pdf domain errors outside (0, tau2)") {
  CHECK_THROWS_AS(pdf(kTruth, kProfile, 0.0), error);
  CHECK_THROWS_AS(pdf(kTruth, kProfile, -0.5), error);
  CHECK_THROWS_AS(pdf(kTruth, kProfile, kProfile.tau2), error);
}

TEST_CASE("density plus censoring atom integrates to one") {
  CHECK(std::abs(oracle::total_mass(kTruth, kProfile) - 1.0) < 1e-9);
  const ModelParams other{1.3, -0.25, 0.9};
  CHECK(std::abs(oracle::total_mass(other, kProfile) - 1.0) < 1e-9);
}

TEST_CASE("pdf is nonnegative across the domain") {
  for (double t = 1e-6; t < kProfile.tau2; t += 0.01) {
    CHECK(pdf(kTruth, kProfile, t) >= 0.0);
  }
}

TEST_CASE("log-likelihood decomposes into per-term logs") {
  const SsaltSample sample = sample_lifetimes(kTruth, kProfile, 60, 20250124);
  REQUIRE(sample.step1_count() >= 1);
  REQUIRE(sample.step2_count() >= 1);
  double by_terms = std::lgamma(60.0 + 1.0) -
                    std::lgamma(static_cast<double>(sample.censored_count()) + 1.0);
  for (double t : sample.times_step1) by_terms += std::log(pdf(kTruth, kProfile, t));
  for (double t : sample.times_step2) by_terms += std::log(pdf(kTruth, kProfile, t));
  by_terms += static_cast<double>(sample.censored_count()) *
              std::log(censor_survival(kTruth, kProfile));
  CHECK(std::abs(log_likelihood(kTruth, kProfile, sample) - by_terms) < 1e-10);
}

TEST_CASE("log-likelihood of one early failure is its log-density") {
  SsaltSample s;
  s.n = 1;
  s.times_step1 = {kProfile.tau1 / 2.0};
  CHECK(log_likelihood(kTruth, kProfile, s) ==
        doctest::Approx(std::log(pdf(kTruth, kProfile, kProfile.tau1 / 2.0))).epsilon(1e-13));
}

TEST_CASE("log-likelihood is invariant under permutation of input times") {
  const SsaltSample sample = sample_lifetimes(kTruth, kProfile, 40, 7);
  std::vector<double> shuffled = sample.times_step1;
  shuffled.insert(shuffled.end(), sample.times_step2.begin(), sample.times_step2.end());
  std::reverse(shuffled.begin(), shuffled.end());
  const SsaltSample rebuilt = split_sample(shuffled, 40, kProfile);
  CHECK(log_likelihood(kTruth, kProfile, rebuilt) ==
        doctest::Approx(log_likelihood(kTruth, kProfile, sample)).epsilon(1e-15));
}

TEST_CASE("sampler: determinism, domain, and split at tau1") {
  const SsaltSample a = sample_lifetimes(kTruth, kProfile, 500, 99);
  const SsaltSample b = sample_lifetimes(kTruth, kProfile, 500, 99);
  CHECK(a.times_step1 == b.times_step1);
  CHECK(a.times_step2 == b.times_step2);
  CHECK(a.censored_count() == b.censored_count());
  for (double t : a.times_step1) {
    CHECK(t > 0.0);
    CHECK(t < kProfile.tau1);
  }
  for (double t : a.times_step2) {
    CHECK(t >= kProfile.tau1);
    CHECK(t < kProfile.tau2);
  }
  const SsaltSample c = sample_lifetimes(kTruth, kProfile, 500, 100);
  CHECK(a.times_step1 != c.times_step1);
}

TEST_CASE("sampler empirical CDF tracks the analytic CDF (KS)") {
  const std::size_t n = 100000;
  const SsaltSample s = sample_lifetimes(kTruth, kProfile, n, 314159);
  std::vector<double> all = s.times_step1;
  all.insert(all.end(), s.times_step2.begin(), s.times_step2.end());
  double d = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const double fv = cdf(kTruth, kProfile, all[i]);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    const double lo = static_cast<double>(i) / static_cast<double>(n);
    d = std::max(d, std::max(std::abs(fv - hi), std::abs(fv - lo)));
  }
  // continuous part ends at F(tau2-) with the remaining mass in the atom
  const double atom_gap = std::abs(censor_survival(kTruth, kProfile) -
                                   static_cast<double>(s.censored_count()) / n);
  d = std::max(d, atom_gap);
  CHECK(d < 0.01);
}

TEST_CASE("split_sample canonicalizes: ordering, tau2 rule, consistency") {
  std::size_t dropped = 0;
  const SsaltSample s =
      split_sample({4.2, 0.5, 5.5, 3.0, 2.9}, 10, kProfile, &dropped);
  CHECK(dropped == 1);                      // 5.5 >= tau2
  CHECK(s.step1_count() == 2);              // 0.5, 2.9
  CHECK(s.step2_count() == 2);              // 3.0 (== tau1 -> step 2), 4.2
  CHECK(s.censored_count() == 6);
  CHECK(s.times_step2.front() == 3.0);
  CHECK_THROWS_AS(split_sample({0.0, 1.0}, 5, kProfile), error);
  CHECK_THROWS_AS(split_sample({1.0, 1.1, 1.2}, 2, kProfile), error);
}

TEST_CASE("profile and parameter invariants are enforced") {
  CHECK_THROWS_AS(validate(StressProfile{1.0, 0.5, 2.0, 3.0, 5.0}), error);  // x0 > x1
  CHECK_THROWS_AS(validate(StressProfile{0.5, 1.0, 2.0, 5.0, 3.0}), error);  // tau2 < tau1
  CHECK_THROWS_AS(validate(ModelParams{0.0, 0.1, 1.0}), error);              // a1 > 0
  CHECK_THROWS_AS(validate(ModelParams{0.0, -1.0, 0.0}), error);             // eta = 0
}
