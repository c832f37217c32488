#include "nmzi/interferometer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nmzi {

namespace {

constexpr double kUnitarityTol = 1e-15;

double inner_sign(AlignmentMode alignment) {
  return alignment == AlignmentMode::ConstructiveInner ? 1.0 : -1.0;
}

}  // namespace

SplitterSet default_splitters() {
  return SplitterSet{std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 3.0),
                     1.0 / std::sqrt(2.0)};
}

InterferometerConfig make_config(AlignmentMode alignment,
                                 const BaseGaussian& base) {
  const SplitterSet s = default_splitters();
  const double outer = s.r_outer * s.r_outer + s.t_outer * s.t_outer;
  const double inner = 2.0 * s.rt_inner * s.rt_inner;
  if (std::fabs(outer - 1.0) > kUnitarityTol ||
      std::fabs(inner - 1.0) > kUnitarityTol) {
    throw std::invalid_argument("splitter moduli are not unitary");
  }
  return InterferometerConfig{s, alignment, base};
}

BeamState psi_F(const InterferometerConfig& config, const TiltVector& tilts) {
  const SplitterSet& s = config.splitters;
  const double w = s.r_outer * s.rt_inner * s.rt_inner;  // 1/sqrt(6)
  return make_state(
      config.base,
      {{w, tilts.kappa_E + tilts.kappa_A + tilts.kappa_F},
       {inner_sign(config.alignment) * w,
        tilts.kappa_E + tilts.kappa_B + tilts.kappa_F}});
}

BeamState psi_D(const InterferometerConfig& config, const TiltVector& tilts) {
  const SplitterSet& s = config.splitters;
  BeamState nested = scale(psi_F(config, tilts), s.r_outer);
  if (config.alignment == AlignmentMode::DestructiveInnerBlockedC) {
    return nested;
  }
  const BeamState c_path = make_state(
      config.base, {{s.t_outer * s.t_outer, tilts.kappa_C}});
  return superpose(c_path, nested);
}

std::array<double, 3> path_weights(const InterferometerConfig& config) {
  const SplitterSet& s = config.splitters;
  const double nested = s.r_outer * s.rt_inner * s.rt_inner * s.r_outer;
  const double c_path =
      config.alignment == AlignmentMode::DestructiveInnerBlockedC
          ? 0.0
          : s.t_outer * s.t_outer;
  return {c_path, nested, inner_sign(config.alignment) * nested};
}

}  // namespace nmzi
