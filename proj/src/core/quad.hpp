#pragma once

#include <functional>

namespace ssalt {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod (G7,K15) on a finite interval. Splits the worst
// segment until the accumulated error estimate satisfies
//   err <= max(rel_tol * |value|, abs_floor).
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, double abs_floor = 1e-14,
                     int max_segments = 2000);

}  // namespace ssalt
