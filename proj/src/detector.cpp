#include "nmzi/detector.hpp"

namespace nmzi {

QuadCellSignal quad_signal(const BeamState& state) {
  return QuadCellSignal{half_line_power(state, HalfLine::Positive) -
                        half_line_power(state, HalfLine::Negative)};
}

}  // namespace nmzi
