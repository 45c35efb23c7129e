#include "core/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace ssalt {
namespace {

// QUADPACK dqk15 nodes and weights on [-1, 1].
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment eval_segment(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double result_k = kWeightsK[7] * fc;
  double result_g = kWeightsG[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double fsum = f(center - dx) + f(center + dx);
    result_k += kWeightsK[i] * fsum;
    if (i % 2 == 1) result_g += kWeightsG[i / 2] * fsum;
  }
  result_k *= half;
  result_g *= half;
  // |K15 - G7| is a conservative error estimate for smooth integrands.
  return Segment{a, b, result_k, std::abs(result_k - result_g)};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_floor, int max_segments) {
  QuadResult out;
  if (!(b > a)) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Segment> queue;
  Segment first = eval_segment(f, a, b);
  double total = first.value;
  double total_err = first.error;
  queue.push(first);
  int n_segments = 1;
  while (n_segments < max_segments) {
    if (total_err <= std::max(rel_tol * std::abs(total), abs_floor)) break;
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval at machine resolution
      queue.push(Segment{worst.a, worst.b, worst.value, 0.0});
      total_err -= worst.error;
      continue;
    }
    Segment left = eval_segment(f, worst.a, mid);
    Segment right = eval_segment(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++n_segments;
  }
  out.value = total;
  out.abs_error = total_err;
  out.converged = total_err <= std::max(rel_tol * std::abs(total), abs_floor) * 4.0;
  return out;
}

}  // namespace ssalt
