// First-order sensitivity of the detector signal to each mirror's tilt:
// the analytic coefficient tables and their finite-difference cross-check.
#pragma once

#include "nmzi/interferometer.hpp"

namespace nmzi {

// S ~ K * (c_A k_A + c_B k_B + c_C k_C + c_E k_E + c_F k_F) for small tilts.
struct SensitivityVector {
  double c_A = 0.0;
  double c_B = 0.0;
  double c_C = 0.0;
  double c_E = 0.0;
  double c_F = 0.0;
};

// Destructive: (+1, -1, +1, 0, 0); constructive: (+1, +1, +1, +2, +2);
// blocked C: all zeros.
SensitivityVector analytic_coefficients(AlignmentMode alignment);

// Central differences of quad_signal at zero tilt, one probe per mirror,
// anchored so c_C = +1 in the live modes; blocked C returns the raw
// derivatives (there is nothing to anchor to). Requires
// 0 < epsilon <= 1e-3 * sigma.
SensitivityVector numeric_coefficients(const InterferometerConfig& config,
                                       double epsilon);

// The raw dS/dkappa_C central difference: the fitted proportionality
// constant K of the sensitivity law.
double sensitivity_scale(const InterferometerConfig& config, double epsilon);

}  // namespace nmzi
