// Sinusoidal mirror drives, time-domain sampling of the detector signal,
// and Hann-windowed power spectra with per-mirror peak extraction.
#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "nmzi/interferometer.hpp"

namespace nmzi {

enum class Mirror { A, B, C, E, F };

inline constexpr Mirror kMirrors[5] = {Mirror::A, Mirror::B, Mirror::C,
                                       Mirror::E, Mirror::F};

std::string mirror_name(Mirror m);

struct MirrorDrive {
  Mirror mirror = Mirror::A;
  double frequency = 0.0;  // cycles per unit time
  double amplitude = 0.0;  // tilt amplitude kappa_0; zero means undriven
  double phase = 0.0;      // radians
  bool operator==(const MirrorDrive&) const = default;
};

// Rejects duplicate mirrors and harmonically related driven frequencies
// (f_i = m * f_j for integer m <= 4).
void validate_drives(const std::vector<MirrorDrive>& drives);

// kappa_i(t) = amplitude_i * sin(2 pi f_i t + phase_i); undriven mirrors 0.
TiltVector tilts_at(const std::vector<MirrorDrive>& drives, double t);

struct SignalTrace {
  double dt = 0.0;
  Eigen::ArrayXd samples;
  std::vector<MirrorDrive> drives;  // drives that produced the trace
  double duration() const { return dt * static_cast<double>(samples.size()); }
};

// Samples quad_signal(psi_D(config, tilts_at(drives, j * dt))) for
// j = 0 .. round(duration/dt) - 1. Requires dt < 1/(10 f_max) and
// duration >= 20/f_min over the driven mirrors.
SignalTrace simulate(const InterferometerConfig& config,
                     const std::vector<MirrorDrive>& drives, double duration,
                     double dt);

struct PeakInfo {
  double frequency = 0.0;  // center of the winning bin
  double power = 0.0;
};

struct PowerSpectrum {
  Eigen::ArrayXd frequencies;
  Eigen::ArrayXd power;
  std::map<Mirror, PeakInfo> peaks;  // driven mirrors only
  double floor = 0.0;                // median power away from drive bins
};

// Hann-windowed one-sided power spectrum, amplitude-calibrated so a
// bin-centered sinusoid of amplitude a peaks at power a^2. Peaks are read as
// the maximum over +-1 bin around each driven frequency's nearest bin.
PowerSpectrum power_spectrum(const SignalTrace& trace);

// Peak power at m1's drive frequency over m2's; both mirrors must be driven.
double peak_ratio(const PowerSpectrum& spectrum, Mirror m1, Mirror m2);

}  // namespace nmzi
