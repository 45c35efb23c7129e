#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/model.hpp"
#include "core/rng.hpp"
#include "core/simulation.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace ssalt;

namespace {
const ModelParams kTruth = testutil::baseline_params();
const StressProfile kProfile = testutil::baseline_profile();

StudyConfig small_config() {
  StudyConfig cfg;
  cfg.truth = kTruth;
  cfg.profile = kProfile;
  cfg.n = 200;
  cfg.replications = 40;
  cfg.betas = {0.0, 1.0};
  cfg.seed = 9001;
  cfg.workers = 2;
  return cfg;
}

double window_mass(const ModelParams& p, double x1, double upper) {
  const double lambda = std::exp(p.a0 + p.a1 * x1);
  return 1.0 - std::exp(-std::pow(upper / lambda, p.eta));
}

double coverage_of(const StudyReport& report, double epsilon, double beta,
                   const std::string& quantity, const std::string& form) {
  for (const CoverageRow& row : report.coverage) {
    if (row.epsilon == epsilon && row.beta == beta && row.quantity == quantity &&
        row.ci_form == form)
      return row.value;
  }
  FAIL("coverage row not found");
  return -1.0;
}

double rmse_of(const StudyReport& report, double epsilon, double beta,
               const std::string& quantity) {
  for (const RmseRow& row : report.rmse) {
    if (row.epsilon == epsilon && row.beta == beta && row.quantity == quantity) return row.value;
  }
  FAIL("rmse row not found");
  return -1.0;
}

}  // namespace

TEST_CASE("contamination calibration is self-consistent") {
  for (ContaminationTarget target :
       {ContaminationTarget::a0, ContaminationTarget::a1, ContaminationTarget::eta}) {
    ContaminationScheme scheme;
    scheme.target = target;
    scheme.epsilon = 0.05;
    const ModelParams tilde = calibrate_contamination(kTruth, kProfile, scheme);
    CHECK(std::abs(window_mass(tilde, kProfile.x1, 1.5) - 0.05) < 1e-8);
    // non-target coordinates stay at the truth
    if (target != ContaminationTarget::a0) CHECK(tilde.a0 == kTruth.a0);
    if (target != ContaminationTarget::a1) CHECK(tilde.a1 == kTruth.a1);
    if (target != ContaminationTarget::eta) CHECK(tilde.eta == kTruth.eta);
  }
}

TEST_CASE("calibration at the uncontaminated mass returns the truth") {
  ContaminationScheme scheme;
  scheme.target = ContaminationTarget::a0;
  scheme.epsilon = window_mass(kTruth, kProfile.x1, 1.5);
  const ModelParams tilde = calibrate_contamination(kTruth, kProfile, scheme);
  CHECK(std::abs(tilde.a0 - kTruth.a0) < 1e-6);
}

TEST_CASE("epsilon = 0 disables contamination") {
  ContaminationScheme scheme;
  scheme.epsilon = 0.0;
  const ModelParams tilde = calibrate_contamination(kTruth, kProfile, scheme);
  CHECK(tilde.a0 == kTruth.a0);
  CHECK(tilde.a1 == kTruth.a1);
  CHECK(tilde.eta == kTruth.eta);

  StudyConfig cfg = small_config();
  scheme.calibrated = true;
  scheme.contaminated = tilde;
  const SsaltSample clean = generate_replication(cfg, scheme, 3);
  const SsaltSample direct = sample_lifetimes(kTruth, kProfile, cfg.n, 0);
  // same inverse-CDF transform, but streams differ; just check validity
  CHECK(clean.n == direct.n);
  CHECK(clean.step1_count() >= 1);
}

TEST_CASE("infeasible windows are rejected") {
  ContaminationScheme scheme;
  scheme.epsilon = 0.05;
  scheme.window_upper = kProfile.tau1 + 1.0;  // must stay below tau1
  CHECK_THROWS_AS(calibrate_contamination(kTruth, kProfile, scheme), error);
  try {
    calibrate_contamination(kTruth, kProfile, scheme);
  } catch (const error& e) {
    CHECK(e.code() == errc::infeasible_scheme);
  }
}

TEST_CASE("contaminated draws stay inside the outlier window") {
  StudyConfig cfg = small_config();
  ContaminationScheme scheme;
  scheme.target = ContaminationTarget::a1;
  scheme.epsilon = 0.10;
  scheme.contaminated = calibrate_contamination(kTruth, kProfile, scheme);
  scheme.calibrated = true;

  // With replacement sampling, ceil(eps n) = 20 outliers below 1.5 join the
  // clean draws; the clean model has mass ~0.0127 below 1.5, so the expected
  // count below 1.5 is 20 + 180 * 0.0127.
  const std::size_t m = 200;
  double below = 0.0;
  for (std::size_t rep = 0; rep < m; ++rep) {
    const SsaltSample s = generate_replication(cfg, scheme, rep);
    CHECK(s.n == cfg.n);
    for (double t : s.times_step1)
      if (t < 1.5) below += 1.0;
  }
  const double clean_mass = window_mass(kTruth, kProfile.x1, 1.5);
  const double expected = 20.0 + 180.0 * clean_mass;
  const double se = std::sqrt(180.0 * clean_mass * (1.0 - clean_mass) * m) / m;
  CHECK(std::abs(below / m - expected) < 3.0 * std::max(se, 0.2));
}

TEST_CASE("replications are deterministic per index") {
  StudyConfig cfg = small_config();
  ContaminationScheme scheme;
  scheme.epsilon = 0.0;
  scheme.calibrated = true;
  scheme.contaminated = kTruth;
  const SsaltSample a = generate_replication(cfg, scheme, 17);
  const SsaltSample b = generate_replication(cfg, scheme, 17);
  CHECK(a.times_step1 == b.times_step1);
  CHECK(a.times_step2 == b.times_step2);
  const SsaltSample c = generate_replication(cfg, scheme, 18);
  CHECK(a.times_step1 != c.times_step1);
}

TEST_CASE("study report is independent of the worker count") {
  StudyConfig cfg = small_config();
  ContaminationScheme scheme;
  scheme.epsilon = 0.05;
  scheme.target = ContaminationTarget::eta;

  cfg.workers = 1;
  const StudyReport serial = run_study(cfg, {scheme});
  cfg.workers = 4;
  const StudyReport parallel = run_study(cfg, {scheme});

  REQUIRE(serial.rmse.size() == parallel.rmse.size());
  for (std::size_t i = 0; i < serial.rmse.size(); ++i) {
    CHECK(serial.rmse[i].value == parallel.rmse[i].value);
    CHECK(serial.rmse[i].quantity == parallel.rmse[i].quantity);
  }
  REQUIRE(serial.cloud.size() == parallel.cloud.size());
  for (std::size_t i = 0; i < serial.cloud.size(); ++i) {
    CHECK(serial.cloud[i].a0 == parallel.cloud[i].a0);
    CHECK(serial.cloud[i].eta == parallel.cloud[i].eta);
  }
  CHECK(serial.discarded == parallel.discarded);
}

TEST_CASE("rmse aggregation is invariant under replication reordering") {
  // aggregate-by-hand from the cloud and compare with the reported rmse
  StudyConfig cfg = small_config();
  cfg.betas = {0.0};
  ContaminationScheme scheme;
  scheme.epsilon = 0.0;
  const StudyReport report = run_study(cfg, {scheme});
  std::vector<double> devs;
  for (const CloudRow& row : report.cloud) devs.push_back(row.a0 - kTruth.a0);
  std::sort(devs.begin(), devs.end());  // any order gives the same mean square
  double acc = 0.0;
  for (double d : devs) acc += d * d;
  const double want = std::sqrt(acc / static_cast<double>(devs.size()));
  CHECK(rmse_of(report, 0.0, 0.0, "a0") == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("desk-scale study: coverage near nominal and robustness ordering") {
  StudyConfig cfg = small_config();
  cfg.replications = 220;
  cfg.betas = {0.0, 1.0};
  ContaminationScheme clean;
  clean.epsilon = 0.0;
  ContaminationScheme heavy;
  heavy.epsilon = 0.10;
  heavy.target = ContaminationTarget::a1;
  const StudyReport report = run_study(cfg, {clean, heavy});

  // clean-data coverage close to nominal (Monte-Carlo tolerance at M = 220)
  for (const char* q : {"a0", "a1", "eta"}) {
    const double cov0 = coverage_of(report, 0.0, 0.0, q, "direct");
    CHECK(cov0 > 0.89);
    CHECK(cov0 <= 1.0);
  }
  // clean data: the MLE is at least as efficient
  CHECK(rmse_of(report, 0.0, 0.0, "a0") <= rmse_of(report, 0.0, 1.0, "a0") * 1.10);
  // 10% contamination in a1: the robust fit beats the MLE decisively
  CHECK(rmse_of(report, 0.10, 1.0, "a1") < rmse_of(report, 0.10, 0.0, "a1"));
  // and MLE coverage of eta collapses
  CHECK(coverage_of(report, 0.10, 0.0, "eta", "direct") < 0.35);
  CHECK(report.replications == 220);
}

TEST_CASE("coverage of the MLE decays monotonically in contamination") {
  StudyConfig cfg = small_config();
  cfg.replications = 150;
  cfg.betas = {0.0};
  std::vector<ContaminationScheme> schemes;
  for (double eps : {0.0, 0.05, 0.10}) {
    ContaminationScheme s;
    s.epsilon = eps;
    s.target = ContaminationTarget::eta;
    schemes.push_back(s);
  }
  const StudyReport report = run_study(cfg, schemes);
  double prev = 2.0;
  for (double eps : {0.0, 0.05, 0.10}) {
    const double cov = coverage_of(report, eps, 0.0, "eta", "direct");
    CHECK(cov <= prev + 0.02);  // Monte-Carlo noise allowance
    prev = cov;
  }
}
