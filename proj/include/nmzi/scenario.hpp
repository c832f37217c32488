// Line-oriented scenario files: strict parsing, defaulting, validation, and
// canonical emission for round-trip-stable experiment definitions.
#pragma once

#include <array>
#include <set>
#include <string>

#include "nmzi/dynamics.hpp"

namespace nmzi {

enum class OutputKind { Trace, Spectrum, Peaks, Beamcurves, Coeffs };

struct Scenario {
  AlignmentMode alignment = AlignmentMode::DestructiveInner;
  double sigma = 1.0;
  std::array<MirrorDrive, 5> drives{};  // indexed A, B, C, E, F
  double rate = 0.0;                    // samples per unit time
  double duration = 0.0;
  std::set<OutputKind> outputs;
  std::array<double, 5> tilts{};        // static tilts for beam curves
  KGrid grid;
  bool operator==(const Scenario&) const = default;
};

// Parses `key = value` lines with `#` comments. Unknown or duplicate keys,
// malformed values, and missing required fields fail with the line number;
// omitted fields receive documented defaults. The result is validated.
Scenario parse_scenario(const std::string& text);

// Canonical full form; parse_scenario(emit_scenario(s)) == s.
std::string emit_scenario(const Scenario& scenario);

// Semantic checks alone (drive frequencies, sampling bounds, grid, tilt
// magnitudes); used again after command-line overrides.
void validate_scenario(const Scenario& scenario);

std::vector<MirrorDrive> scenario_drives(const Scenario& scenario);
TiltVector scenario_tilts(const Scenario& scenario);

}  // namespace nmzi
