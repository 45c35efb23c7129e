#include "core/asymptotics.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/special_functions.hpp"
#include "core/stress_integrals.hpp"

namespace ssalt {
namespace {

// Quantities shared by the censoring-atom terms. With A = (tau2 + h)/lambda2,
// the log-survival derivatives are
//   d/da0  = eta A^eta,
//   d/da1  = eta A^{eta-1} D,  D = x1 tau1/lambda1 + x2 (tau2 - tau1)/lambda2,
//   d/deta = -A^eta log A.
struct AtomTerms {
  double a_pow_eta;   // A^eta
  double log_a;       // log A
  double d;           // D above
  double weight;      // survival^{beta+1} = exp(-(beta+1) A^eta)
  double u_a0, u_a1, u_eta;
};

AtomTerms atom_terms(const ModelParams& p, const StressProfile& pr, double beta) {
  const double lambda1 = scale_at(p, pr.x1);
  const double lambda2 = scale_at(p, pr.x2);
  const double a = (pr.tau2 - pr.tau1) / lambda2 + pr.tau1 / lambda1;
  AtomTerms t;
  t.a_pow_eta = std::pow(a, p.eta);
  t.log_a = std::log(a);
  t.d = pr.x1 * pr.tau1 / lambda1 + pr.x2 * (pr.tau2 - pr.tau1) / lambda2;
  t.weight = std::exp(-(beta + 1.0) * t.a_pow_eta);
  t.u_a0 = p.eta * t.a_pow_eta;
  t.u_a1 = p.eta * t.a_pow_eta / a * t.d;
  t.u_eta = -t.a_pow_eta * t.log_a;
  return t;
}

// Power and log-power integrals needed by J and xi at one tuning value.
struct IntegralSet {
  // step 1
  double z1_0, z1_e, z1_2e;
  double h1_00, h1_01, h1_02, h1_e1, h1_e2, h1_2e1, h1_2e2;
  // step 2
  double z2_0, z2_e, z2_2e, z2_m1, z2_m2, z2_em1, z2_em2, z2_2em1, z2_2em2;
  double h2_00, h2_01, h2_02, h2_e1, h2_e2, h2_2e1, h2_2e2, h2_m11, h2_em11, h2_2em11;
};

IntegralSet integral_set(const ModelParams& p, const StressProfile& pr, double beta) {
  const double eta = p.eta;
  IntegralSet s;
  s.z1_0 = power_integral_step1(0.0, beta, p, pr);
  s.z1_e = power_integral_step1(eta, beta, p, pr);
  s.z1_2e = power_integral_step1(2.0 * eta, beta, p, pr);
  s.h1_00 = log_power_integral_step1(0.0, 0, beta, p, pr);
  s.h1_01 = log_power_integral_step1(0.0, 1, beta, p, pr);
  s.h1_02 = log_power_integral_step1(0.0, 2, beta, p, pr);
  s.h1_e1 = log_power_integral_step1(eta, 1, beta, p, pr);
  s.h1_e2 = log_power_integral_step1(eta, 2, beta, p, pr);
  s.h1_2e1 = log_power_integral_step1(2.0 * eta, 1, beta, p, pr);
  s.h1_2e2 = log_power_integral_step1(2.0 * eta, 2, beta, p, pr);

  s.z2_0 = power_integral_step2(0.0, beta, p, pr);
  s.z2_e = power_integral_step2(eta, beta, p, pr);
  s.z2_2e = power_integral_step2(2.0 * eta, beta, p, pr);
  s.z2_m1 = power_integral_step2(-1.0, beta, p, pr);
  s.z2_m2 = power_integral_step2(-2.0, beta, p, pr);
  s.z2_em1 = power_integral_step2(eta - 1.0, beta, p, pr);
  s.z2_em2 = power_integral_step2(eta - 2.0, beta, p, pr);
  s.z2_2em1 = power_integral_step2(2.0 * eta - 1.0, beta, p, pr);
  s.z2_2em2 = power_integral_step2(2.0 * (eta - 1.0), beta, p, pr);
  s.h2_00 = log_power_integral_step2(0.0, 0, beta, p, pr);
  s.h2_01 = log_power_integral_step2(0.0, 1, beta, p, pr);
  s.h2_02 = log_power_integral_step2(0.0, 2, beta, p, pr);
  s.h2_e1 = log_power_integral_step2(eta, 1, beta, p, pr);
  s.h2_e2 = log_power_integral_step2(eta, 2, beta, p, pr);
  s.h2_2e1 = log_power_integral_step2(2.0 * eta, 1, beta, p, pr);
  s.h2_2e2 = log_power_integral_step2(2.0 * eta, 2, beta, p, pr);
  s.h2_m11 = log_power_integral_step2(-1.0, 1, beta, p, pr);
  s.h2_em11 = log_power_integral_step2(eta - 1.0, 1, beta, p, pr);
  s.h2_2em11 = log_power_integral_step2(2.0 * eta - 1.0, 1, beta, p, pr);
  return s;
}

Mat3 j_matrix_impl(const ModelParams& p, const StressProfile& pr, const IntegralSet& s,
                   const AtomTerms& atom) {
  const double eta = p.eta;
  const double x1 = pr.x1, x2 = pr.x2;
  const double lambda1 = scale_at(p, pr.x1);
  const double c = pr.tau1 / lambda1 * (x2 - x1);
  const double eta2 = eta * eta;

  // Shared window combinations.
  const double w1 = s.z1_0 + s.z1_2e - 2.0 * s.z1_e;
  const double w2 = s.z2_0 + s.z2_2e - 2.0 * s.z2_e;
  const double mix13_1 = -s.z1_0 + s.z1_e - eta * (s.h1_01 - 2.0 * s.h1_e1 + s.h1_2e1);
  const double mix13_2 = -s.z2_0 + s.z2_e - eta * (s.h2_01 - 2.0 * s.h2_e1 + s.h2_2e1);

  Mat3 j = zero3();

  j[0][0] = eta2 * w1 + eta2 * w2 + atom.u_a0 * atom.u_a0 * atom.weight;

  j[1][1] = x1 * x1 * eta2 * w1 + eta2 * x2 * x2 * w2 +
            c * c * ((eta - 1.0) * (eta - 1.0) * s.z2_m2 + eta2 * s.z2_2em2 -
                     2.0 * eta * (eta - 1.0) * s.z2_em2) +
            c * x2 * (-2.0 * eta * (eta - 1.0) * s.z2_m1 + 2.0 * eta * (2.0 * eta - 1.0) * s.z2_em1 -
                      2.0 * eta2 * s.z2_2em1) +
            atom.u_a1 * atom.u_a1 * atom.weight;

  const double j33_w1 = s.h1_00 / eta2 + 2.0 / eta * s.h1_01 + s.h1_02 -
                        2.0 / eta * s.h1_e1 - 2.0 * s.h1_e2 + s.h1_2e2;
  const double j33_w2 = s.h2_00 / eta2 + 2.0 / eta * s.h2_01 + s.h2_02 -
                        2.0 / eta * s.h2_e1 - 2.0 * s.h2_e2 + s.h2_2e2;
  j[2][2] = j33_w1 + j33_w2 + atom.u_eta * atom.u_eta * atom.weight;

  j[0][1] = eta2 * x1 * w1 + eta2 * x2 * w2 +
            eta * c * (-(eta - 1.0) * s.z2_m1 + (2.0 * eta - 1.0) * s.z2_em1 - eta * s.z2_2em1) +
            atom.u_a0 * atom.u_a1 * atom.weight;

  j[0][2] = mix13_1 + mix13_2 + atom.u_a0 * atom.u_eta * atom.weight;

  j[1][2] = x1 * mix13_1 + x2 * mix13_2 +
            c * ((eta - 1.0) / eta * s.z2_m1 - s.z2_em1 + (eta - 1.0) * s.h2_m11 -
                 (2.0 * eta - 1.0) * s.h2_em11 + eta * s.h2_2em11) +
            atom.u_a1 * atom.u_eta * atom.weight;

  j[1][0] = j[0][1];
  j[2][0] = j[0][2];
  j[2][1] = j[1][2];
  return j;
}

Vec3 xi_vector_impl(const ModelParams& p, const StressProfile& pr, const IntegralSet& s,
                    const AtomTerms& atom) {
  const double eta = p.eta;
  const double x1 = pr.x1, x2 = pr.x2;
  const double lambda1 = scale_at(p, pr.x1);
  const double c = pr.tau1 / lambda1 * (x2 - x1);

  Vec3 xi{};
  const double score1_1 = -s.z1_0 + s.z1_e;  // step-1 window of the a0 score
  const double score1_2 = -s.z2_0 + s.z2_e;
  xi[0] = eta * score1_1 + eta * score1_2 + atom.u_a0 * atom.weight;
  xi[1] = eta * x1 * score1_1 +
          (eta * x2 * score1_2 + c * ((eta - 1.0) * s.z2_m1 - eta * s.z2_em1)) +
          atom.u_a1 * atom.weight;
  xi[2] = (s.z1_0 / eta + s.h1_01 - s.h1_e1) + (s.z2_0 / eta + s.h2_01 - s.h2_e1) +
          atom.u_eta * atom.weight;
  return xi;
}

}  // namespace

Mat3 j_matrix(const ModelParams& params, const StressProfile& profile, double beta) {
  validate(params);
  validate(profile);
  return j_matrix_impl(params, profile, integral_set(params, profile, beta),
                       atom_terms(params, profile, beta));
}

Vec3 xi_vector(const ModelParams& params, const StressProfile& profile, double beta) {
  validate(params);
  validate(profile);
  return xi_vector_impl(params, profile, integral_set(params, profile, beta),
                        atom_terms(params, profile, beta));
}

Mat3 k_matrix(const ModelParams& params, const StressProfile& profile, double beta) {
  const Mat3 j2 = j_matrix(params, profile, 2.0 * beta);
  const Vec3 xi = xi_vector(params, profile, beta);
  Mat3 k = j2;
  const Mat3 op = outer(xi, xi);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k[i][j] -= op[i][j];
  return k;
}

SandwichCov sandwich_covariance(const ModelParams& params, const StressProfile& profile,
                                double beta) {
  validate(params);
  validate(profile);
  SandwichCov cov;
  cov.beta = beta;
  const IntegralSet set_b = integral_set(params, profile, beta);
  const AtomTerms atom_b = atom_terms(params, profile, beta);
  cov.j = j_matrix_impl(params, profile, set_b, atom_b);
  cov.xi = xi_vector_impl(params, profile, set_b, atom_b);
  const Mat3 j2 = j_matrix_impl(params, profile, integral_set(params, profile, 2.0 * beta),
                                atom_terms(params, profile, 2.0 * beta));
  cov.k = j2;
  const Mat3 op = outer(cov.xi, cov.xi);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) cov.k[i][j] -= op[i][j];

  const Vec3 eig = sym_eigenvalues3(cov.j);
  if (!(eig[0] > 0.0))
    raise(errc::numerical, "information matrix is not positive definite");
  if (eig[2] / eig[0] > 1e12)
    raise(errc::numerical, "information matrix is ill-conditioned (cond > 1e12)");

  // Sigma = J^{-1} K J^{-1} via two symmetric solves, no explicit inverse.
  const Mat3 x = solve3(cov.j, cov.k);            // J^{-1} K
  const Mat3 sigma_t = solve3(cov.j, transpose(x));  // J^{-1} K^T J^{-1}
  Mat3 sigma = transpose(sigma_t);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double avg = 0.5 * (sigma[i][j] + sigma[j][i]);
      sigma[i][j] = avg;
      sigma[j][i] = avg;
    }
  cov.sigma = sigma;
  return cov;
}

std::array<Interval, 3> param_ci(const DpdFit& fit, const SandwichCov& cov, std::size_t n,
                                 double level) {
  if (!(level > 0.0 && level < 1.0)) raise(errc::invalid_argument, "level must be in (0, 1)");
  const double z = normal_quantile(0.5 + level / 2.0);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const Vec3 theta{fit.theta_hat.a0, fit.theta_hat.a1, fit.theta_hat.eta};
  std::array<Interval, 3> out;
  for (int i = 0; i < 3; ++i) {
    const double var = std::max(cov.sigma[i][i], 0.0);
    const double half = z * std::sqrt(var) / sqrt_n;
    out[i] = Interval{theta[i] - half, theta[i] + half};
  }
  return out;
}

}  // namespace ssalt
