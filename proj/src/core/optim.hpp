#pragma once

#include <array>
#include <functional>

namespace ssalt {

using Vec3d = std::array<double, 3>;

struct NelderMeadOptions {
  int max_iters = 2000;
  double ftol = 1e-10;
  double xtol = 1e-9;
  double initial_step = 0.3;
};

struct NelderMeadResult {
  Vec3d x{};
  double fx = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Derivative-free simplex minimization in three dimensions. The objective may
// return +inf to mark infeasible points.
NelderMeadResult nelder_mead(const std::function<double(const Vec3d&)>& f, const Vec3d& x0,
                             const NelderMeadOptions& options);

}  // namespace ssalt
