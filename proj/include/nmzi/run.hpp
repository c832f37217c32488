// End-to-end scenario execution: simulate, transform, extract peaks and
// coefficients, and emit bit-stable CSV artifacts plus a run report.
#pragma once

#include <string>
#include <vector>

#include "nmzi/scenario.hpp"
#include "nmzi/smallsignal.hpp"

namespace nmzi {

struct PeakRow {
  Mirror mirror;
  double frequency;
  double power;
  double floor_ratio;
};

struct FileEntry {
  std::string name;
  long rows;  // data rows, excluding the header
};

struct CoefficientSet {
  SensitivityVector analytic;
  SensitivityVector numeric;
  double scale;  // raw dS/dkappa_C at the probe epsilon
};

struct RunReport {
  std::vector<PeakRow> peaks;
  double floor = 0.0;
  CoefficientSet coefficients;
  std::vector<FileEntry> files;
};

CoefficientSet compute_coefficients(const Scenario& scenario);

// CSV builders; all floating values at 17 significant digits, LF endings.
std::string csv_trace(const SignalTrace& trace);
std::string csv_spectrum(const PowerSpectrum& spectrum);
std::string csv_peaks(const std::vector<PeakRow>& peaks);
std::string csv_beamcurves(const Scenario& scenario);
std::string csv_coeffs(const CoefficientSet& coefficients);

// Runs the full pipeline and writes the scenario's requested outputs as
// <out_dir>/<stem>_<kind>.csv.
RunReport run_scenario(const Scenario& scenario, const std::string& out_dir,
                       const std::string& stem);

std::string render_report(const Scenario& scenario, const RunReport& report);

}  // namespace nmzi
