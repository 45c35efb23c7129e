#pragma once

namespace ssalt {

// Lower incomplete gamma: integral of t^{s-1} e^{-t} over (0, a). Requires
// s > 0; for s <= 0 the integral diverges at 0 and callers must use the
// two-limit form below.
double lower_incomplete_gamma(double s, double a);

// Upper incomplete gamma: integral of t^{s-1} e^{-t} over (a, inf), s > 0.
double upper_incomplete_gamma(double s, double a);

// Regularized P(s, a) = lower_incomplete_gamma(s, a) / Gamma(s).
double regularized_gamma_p(double s, double a);

// Integral of t^{s-1} e^{-t} over (a, b) for 0 <= a <= b, any real s.
// Finite for every real s as long as a > 0; a == 0 requires s > 0.
double generalized_incomplete_gamma(double s, double a, double b);

double digamma(double x);

// Inverse standard-normal CDF.
double normal_quantile(double p);

}  // namespace ssalt
