#pragma once

#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "dixiecup/kahan.hpp"

namespace dixiecup {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  bool converged = false;
  int intervals = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes (abscissa, Gauss weight, Kronrod weight).
inline constexpr double kGk15[8][3] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978553},
    {0.207784955007898468, 0.0, 0.204432940075298892},
    {0.586087235467691130, 0.0, 0.169004726639267903},
    {0.864864423359769073, 0.0, 0.104790010322250184},
    {0.991455371120812639, 0.0, 0.022935322010529225},
};

template <class Func>
void gk15(const Func& f, double a, double b, double& value, double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double g7 = kGk15[0][1] * f0;
  double k15 = kGk15[0][2] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kGk15[i][0];
    const double fi = f(mid + dx) + f(mid - dx);
    g7 += kGk15[i][1] * fi;
    k15 += kGk15[i][2] * fi;
  }
  g7 *= half;
  k15 *= half;
  value = k15;
  const double d = std::abs(g7 - k15);
  err = std::min(d, std::pow(200.0 * d, 1.5));
  // Never claim better than a few ulps of the segment magnitude.
  err = std::max(err, 4e-16 * std::abs(k15));
}

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over consecutive [breaks[i],
// breaks[i+1]] panels with an absolute error target. Splits the worst panel
// until the summed local error estimate clears abs_tol or the panel budget
// runs out.
template <class Func>
QuadratureResult integrate_adaptive(const Func& f, const std::vector<double>& breaks,
                                    double abs_tol, int max_intervals = 60000) {
  std::priority_queue<detail::Segment> heap;
  std::vector<detail::Segment> frozen;  // panels too narrow to split further
  double total_err = 0.0;
  int used = 0;

  double magnitude = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    detail::Segment s{breaks[i], breaks[i + 1], 0.0, 0.0};
    detail::gk15(f, s.a, s.b, s.value, s.error);
    total_err += s.error;
    magnitude += std::abs(s.value);
    heap.push(s);
    ++used;
  }

  // Rounding floors the achievable error at a few ulps of the integral's
  // magnitude; refining past that would spin the panel budget for nothing.
  const bool attainable = abs_tol >= 2e-16 * magnitude;

  while (attainable && total_err > abs_tol && !heap.empty() && used < max_intervals) {
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 1e-14 * (std::abs(mid) + 1.0)) {
      frozen.push_back(worst);
      continue;
    }
    total_err -= worst.error;
    detail::Segment lo{worst.a, mid, 0.0, 0.0};
    detail::Segment hi{mid, worst.b, 0.0, 0.0};
    detail::gk15(f, lo.a, lo.b, lo.value, lo.error);
    detail::gk15(f, hi.a, hi.b, hi.value, hi.error);
    total_err += lo.error + hi.error;
    heap.push(lo);
    heap.push(hi);
    ++used;
  }

  KahanSum value;
  KahanSum err;
  while (!heap.empty()) {
    value.add(heap.top().value);
    err.add(heap.top().error);
    heap.pop();
  }
  for (const auto& s : frozen) {
    value.add(s.value);
    err.add(s.error);
  }

  QuadratureResult out;
  out.value = value.value();
  out.error = err.value();
  out.converged = out.error <= abs_tol;
  out.intervals = used;
  return out;
}

}  // namespace dixiecup
