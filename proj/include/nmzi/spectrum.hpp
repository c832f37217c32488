// Beam states in k_y-space: weighted sums of shifted copies of one base
// Gaussian angular spectrum, with exact (erf closed-form) power integrals.
#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "nmzi/quadrature.hpp"

namespace nmzi {

struct BaseGaussian {
  double sigma = 1.0;  // spectral width (sigma = 2/W for beam waist W)
  double norm = 1.0;   // amplitude scale N
};

// Base with N chosen so the spectral power integrates to exactly 1:
// N = (2 / (pi * sigma^2))^(1/4).
BaseGaussian normalize_l2(double sigma);

// N * exp(-k^2 / sigma^2)
double gaussian_amplitude(const BaseGaussian& base, double k);

struct Term {
  double weight = 0.0;
  double shift = 0.0;
};

// A finite superposition of shifted base Gaussians. An empty term list is
// the null beam (a blocked path).
struct BeamState {
  BaseGaussian base;
  std::vector<Term> terms;
};

// Handler for tilt-validity warnings (|shift| beyond sigma/10, where the
// small-tilt linearization degrades). Pass nullptr to restore the default
// stderr handler.
using WarningHandler = std::function<void(const std::string&)>;
void set_validity_warning_handler(WarningHandler handler);

// Builds a state, enforcing the tilt guard: |shift| > sigma aborts with
// std::domain_error, |shift| > sigma/10 emits a validity warning.
BeamState make_state(const BaseGaussian& base, std::vector<Term> terms);

BeamState shift(const BeamState& state, double kappa);
BeamState scale(const BeamState& state, double w);
// Concatenates term lists; both states must share the same base.
BeamState superpose(const BeamState& a, const BeamState& b);

struct KGrid {
  double k_min = -3.0;
  double k_max = 3.0;
  int n = 601;
  Eigen::ArrayXd points() const;
  bool operator==(const KGrid&) const = default;
};

double evaluate_at(const BeamState& state, double k);
Eigen::ArrayXd evaluate(const BeamState& state, const KGrid& grid);

enum class HalfLine { Positive, Negative };

// Integral of |amplitude|^2 over (0, inf) or (-inf, 0), evaluated two ways on
// every call: the pairwise erf closed form (returned) and adaptive
// Gauss-Kronrod quadrature over the +-12 sigma support (audits the closed
// form; disagreement beyond tolerance raises QuadratureError).
double half_line_power(const BeamState& state, HalfLine side);

// The two routes individually, for oracle comparisons at caller-chosen
// tolerances.
double half_line_power_closed(const BeamState& state, HalfLine side);
QuadratureResult half_line_power_quadrature(const BeamState& state,
                                            HalfLine side, double abs_tol);

// Full-line power via the closed form.
double total_power(const BeamState& state);

// Sum of |w_i * w_j| pair masses: the magnitude scale of the power sums
// before any cancellation, used as the round-off reference in tolerances.
double gross_power(const BeamState& state);

}  // namespace nmzi
