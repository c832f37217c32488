#include "nmzi/smallsignal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nmzi/detector.hpp"

namespace nmzi {

namespace {

constexpr double kMaxEpsilonFraction = 1e-3;  // of sigma

void check_epsilon(const InterferometerConfig& config, double epsilon) {
  const double limit = kMaxEpsilonFraction * config.base.sigma;
  if (!(epsilon > 0.0) || epsilon > limit) {
    throw std::invalid_argument("epsilon = " + std::to_string(epsilon) +
                                " outside (0, " + std::to_string(limit) +
                                "] = (0, 1e-3 sigma]");
  }
}

double probe(const InterferometerConfig& config, double TiltVector::*field,
             double epsilon) {
  auto tilted = [&](double value) {
    TiltVector tilts;
    tilts.*field = value;
    return quad_signal(psi_D(config, tilts)).value;
  };
  return (tilted(epsilon) - tilted(-epsilon)) / (2.0 * epsilon);
}

}  // namespace

SensitivityVector analytic_coefficients(AlignmentMode alignment) {
  switch (alignment) {
    case AlignmentMode::DestructiveInner:
      return {1.0, -1.0, 1.0, 0.0, 0.0};
    case AlignmentMode::ConstructiveInner:
      return {1.0, 1.0, 1.0, 2.0, 2.0};
    case AlignmentMode::DestructiveInnerBlockedC:
      return {0.0, 0.0, 0.0, 0.0, 0.0};
  }
  throw std::invalid_argument("unknown alignment mode");
}

SensitivityVector numeric_coefficients(const InterferometerConfig& config,
                                       double epsilon) {
  check_epsilon(config, epsilon);
  SensitivityVector raw{probe(config, &TiltVector::kappa_A, epsilon),
                        probe(config, &TiltVector::kappa_B, epsilon),
                        probe(config, &TiltVector::kappa_C, epsilon),
                        probe(config, &TiltVector::kappa_E, epsilon),
                        probe(config, &TiltVector::kappa_F, epsilon)};
  if (config.alignment == AlignmentMode::DestructiveInnerBlockedC) {
    return raw;
  }
  const double anchor = raw.c_C;
  return {raw.c_A / anchor, raw.c_B / anchor, raw.c_C / anchor,
          raw.c_E / anchor, raw.c_F / anchor};
}

double sensitivity_scale(const InterferometerConfig& config, double epsilon) {
  check_epsilon(config, epsilon);
  return probe(config, &TiltVector::kappa_C, epsilon);
}

}  // namespace nmzi
