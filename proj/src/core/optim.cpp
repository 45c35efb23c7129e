#include "core/optim.hpp"

#include <algorithm>
#include <cmath>

namespace ssalt {
namespace {

Vec3d combine(const Vec3d& a, double wa, const Vec3d& b, double wb) {
  return Vec3d{wa * a[0] + wb * b[0], wa * a[1] + wb * b[1], wa * a[2] + wb * b[2]};
}

double spread(const Vec3d& a, const Vec3d& b) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Vec3d&)>& f, const Vec3d& x0,
                             const NelderMeadOptions& options) {
  constexpr int kDim = 3;
  constexpr int kVerts = kDim + 1;
  std::array<Vec3d, kVerts> xs;
  std::array<double, kVerts> fs;
  xs[0] = x0;
  for (int i = 1; i < kVerts; ++i) {
    xs[i] = x0;
    xs[i][i - 1] += options.initial_step;
  }
  for (int i = 0; i < kVerts; ++i) fs[i] = f(xs[i]);

  NelderMeadResult result;
  int iter = 0;
  std::array<int, kVerts> order{0, 1, 2, 3};
  for (; iter < options.max_iters; ++iter) {
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    const int lo = order[0], hi = order[kVerts - 1], next_hi = order[kVerts - 2];

    const double fspread = std::abs(fs[hi] - fs[lo]);
    double xspread = 0.0;
    for (int i = 1; i < kVerts; ++i) xspread = std::max(xspread, spread(xs[order[i]], xs[lo]));
    if (fspread <= options.ftol * (std::abs(fs[lo]) + options.ftol) && xspread <= options.xtol) {
      result.converged = true;
      break;
    }

    Vec3d centroid{0, 0, 0};
    for (int i = 0; i < kVerts; ++i) {
      if (i == hi) continue;
      for (int d = 0; d < kDim; ++d) centroid[d] += xs[i][d] / kDim;
    }

    const Vec3d reflected = combine(centroid, 2.0, xs[hi], -1.0);
    const double f_reflected = f(reflected);
    if (f_reflected < fs[order[0]]) {
      const Vec3d expanded = combine(centroid, 3.0, xs[hi], -2.0);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        xs[hi] = expanded;
        fs[hi] = f_expanded;
      } else {
        xs[hi] = reflected;
        fs[hi] = f_reflected;
      }
    } else if (f_reflected < fs[next_hi]) {
      xs[hi] = reflected;
      fs[hi] = f_reflected;
    } else {
      const bool outside = f_reflected < fs[hi];
      const Vec3d contracted = outside ? combine(centroid, 0.5, reflected, 0.5)
                                       : combine(centroid, 0.5, xs[hi], 0.5);
      const double f_contracted = f(contracted);
      if (f_contracted < (outside ? f_reflected : fs[hi])) {
        xs[hi] = contracted;
        fs[hi] = f_contracted;
      } else {
        // shrink toward the best vertex
        for (int i = 0; i < kVerts; ++i) {
          if (i == order[0]) continue;
          xs[i] = combine(xs[order[0]], 0.5, xs[i], 0.5);
          fs[i] = f(xs[i]);
        }
      }
    }
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
  result.x = xs[order[0]];
  result.fx = fs[order[0]];
  result.iterations = iter;
  return result;
}

}  // namespace ssalt
