// Adaptive Gauss-Kronrod (G7/K15) integration with worst-interval-first refinement.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nmzi {

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& message, double achieved_tolerance)
      : std::runtime_error(message), achieved(achieved_tolerance) {}
  double achieved;  // error estimate at the point of giving up
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
};

namespace detail {

// 15-point Kronrod abscissae (positive half) and weights; the embedded
// 7-point Gauss rule uses the odd-indexed abscissae.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F>
std::pair<double, double> gauss_kronrod_15(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = kKronrodWeights[7] * f(mid);
  double gauss = kGaussWeights[3] * f(mid);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    kronrod += kKronrodWeights[i] * fsum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::fabs(kronrod - gauss)};
}

}  // namespace detail

// Integrates f over [a, b] to the requested absolute tolerance by repeatedly
// bisecting the interval with the largest error estimate. Throws
// QuadratureError if the budget runs out before the estimates converge.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                    int max_intervals = 4000) {
  struct Interval {
    double a, b, value, error;
  };
  auto make = [&](double lo, double hi) {
    auto [v, e] = detail::gauss_kronrod_15(f, lo, hi);
    return Interval{lo, hi, v, e};
  };

  std::vector<Interval> intervals{make(a, b)};
  const double min_width = std::fabs(b - a) * 1e-14;
  while (true) {
    double total_error = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      total_error += intervals[i].error;
      if (intervals[i].error > intervals[worst].error) worst = i;
    }
    if (total_error <= abs_tol || intervals[worst].error == 0.0) break;
    if (static_cast<int>(intervals.size()) >= max_intervals ||
        intervals[worst].b - intervals[worst].a <= min_width) {
      throw QuadratureError(
          "adaptive quadrature did not reach tolerance " +
              std::to_string(abs_tol) + "; achieved " +
              std::to_string(total_error) + " with " +
              std::to_string(intervals.size()) + " intervals",
          total_error);
    }
    const Interval w = intervals[worst];
    const double mid = 0.5 * (w.a + w.b);
    intervals[worst] = make(w.a, mid);
    intervals.push_back(make(mid, w.b));
  }

  QuadratureResult result;
  result.intervals = static_cast<int>(intervals.size());
  for (const Interval& iv : intervals) {
    result.value += iv.value;
    result.error_estimate += iv.error;
  }
  return result;
}

}  // namespace nmzi
