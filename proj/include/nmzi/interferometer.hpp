// The nested Mach-Zehnder topology: splitter moduli, alignment modes, and
// composition of the exit beam toward the detector from instantaneous tilts.
#pragma once

#include <array>

#include "nmzi/spectrum.hpp"

namespace nmzi {

struct SplitterSet {
  double r_outer;   // outer splitters BS1/BS4 reflection modulus, sqrt(2/3)
  double t_outer;   // outer transmission modulus, sqrt(1/3)
  double rt_inner;  // inner splitters BS2/BS3, 1/sqrt(2) both ways
};

SplitterSet default_splitters();

enum class AlignmentMode {
  ConstructiveInner,         // inner paths add toward mirror F
  DestructiveInner,          // inner paths cancel toward mirror F
  DestructiveInnerBlockedC,  // destructive, with the outer C path blocked
};

struct TiltVector {
  double kappa_A = 0.0;
  double kappa_B = 0.0;
  double kappa_C = 0.0;
  double kappa_E = 0.0;
  double kappa_F = 0.0;
};

struct InterferometerConfig {
  SplitterSet splitters;
  AlignmentMode alignment;
  BaseGaussian base;
};

// Config with the standard splitter moduli; validates the unitarity sums.
InterferometerConfig make_config(AlignmentMode alignment,
                                 const BaseGaussian& base);

// Beam just after mirror F: two terms of weight +-(r_outer * rt_inner^2)
// shifted by kappa_E + kappa_A + kappa_F and kappa_E + kappa_B + kappa_F,
// with the relative sign set by the alignment.
BeamState psi_F(const InterferometerConfig& config, const TiltVector& tilts);

// Beam at detector D: the C-path Gaussian (weight t_outer^2, absent when
// blocked) superposed with psi_F folded through the exit splitter.
BeamState psi_D(const InterferometerConfig& config, const TiltVector& tilts);

// Net amplitude carried by the C, A, and B paths at the detector.
std::array<double, 3> path_weights(const InterferometerConfig& config);

}  // namespace nmzi
