// Quad-cell detector: upper-minus-lower power difference of a beam state.
#pragma once

#include "nmzi/spectrum.hpp"

namespace nmzi {

struct QuadCellSignal {
  double value = 0.0;  // proportionality constant fixed to 1
};

// half_line_power(+) - half_line_power(-); both halves carry the built-in
// quadrature audit, so quadrature failures propagate.
QuadCellSignal quad_signal(const BeamState& state);

}  // namespace nmzi
