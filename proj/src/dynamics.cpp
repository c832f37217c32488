#include "nmzi/dynamics.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "nmzi/detector.hpp"

namespace nmzi {

namespace {

constexpr double kHarmonicTol = 1e-9;  // relative, for f_i = m * f_j checks
constexpr int kMaxHarmonic = 4;
constexpr int kMinSpectrumSamples = 16;
constexpr int kPeakHalfWindow = 1;   // peak = max over +-1 bin
constexpr int kFloorExclusion = 2;   // floor ignores bins within +-2 of drives

void apply_tilt(TiltVector& tilts, Mirror m, double value) {
  switch (m) {
    case Mirror::A: tilts.kappa_A = value; return;
    case Mirror::B: tilts.kappa_B = value; return;
    case Mirror::C: tilts.kappa_C = value; return;
    case Mirror::E: tilts.kappa_E = value; return;
    case Mirror::F: tilts.kappa_F = value; return;
  }
}

std::vector<const MirrorDrive*> driven(const std::vector<MirrorDrive>& drives) {
  std::vector<const MirrorDrive*> out;
  for (const MirrorDrive& d : drives) {
    if (d.amplitude > 0.0) out.push_back(&d);
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double m = values[mid];
  if (values.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(values.begin(), values.begin() + mid));
  }
  return m;
}

}  // namespace

std::string mirror_name(Mirror m) {
  switch (m) {
    case Mirror::A: return "A";
    case Mirror::B: return "B";
    case Mirror::C: return "C";
    case Mirror::E: return "E";
    case Mirror::F: return "F";
  }
  return "?";
}

void validate_drives(const std::vector<MirrorDrive>& drives) {
  for (std::size_t i = 0; i < drives.size(); ++i) {
    if (!(drives[i].frequency > 0.0)) {
      throw std::invalid_argument("mirror " + mirror_name(drives[i].mirror) +
                                  ": drive frequency must be positive");
    }
    if (drives[i].amplitude < 0.0) {
      throw std::invalid_argument("mirror " + mirror_name(drives[i].mirror) +
                                  ": drive amplitude must be non-negative");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (drives[i].mirror == drives[j].mirror) {
        throw std::invalid_argument("mirror " + mirror_name(drives[i].mirror) +
                                    " appears twice in the drive list");
      }
    }
  }
  const auto active = driven(drives);
  for (std::size_t i = 0; i < active.size(); ++i) {
    for (std::size_t j = 0; j < active.size(); ++j) {
      if (i == j) continue;
      for (int m = 1; m <= kMaxHarmonic; ++m) {
        const double target = m * active[j]->frequency;
        if (std::fabs(active[i]->frequency - target) <=
            kHarmonicTol * target) {
          throw std::invalid_argument(
              "drive frequencies " + mirror_name(active[i]->mirror) + "=" +
              std::to_string(active[i]->frequency) + " and " +
              mirror_name(active[j]->mirror) + "=" +
              std::to_string(active[j]->frequency) +
              " are harmonically related (m=" + std::to_string(m) + ")");
        }
      }
    }
  }
}

TiltVector tilts_at(const std::vector<MirrorDrive>& drives, double t) {
  TiltVector tilts;
  for (const MirrorDrive& d : drives) {
    if (d.amplitude == 0.0) continue;
    apply_tilt(tilts, d.mirror,
               d.amplitude *
                   std::sin(2.0 * std::numbers::pi * d.frequency * t +
                            d.phase));
  }
  return tilts;
}

SignalTrace simulate(const InterferometerConfig& config,
                     const std::vector<MirrorDrive>& drives, double duration,
                     double dt) {
  validate_drives(drives);
  if (!(dt > 0.0) || !(duration > 0.0)) {
    throw std::invalid_argument("duration and dt must be positive");
  }
  const auto active = driven(drives);
  if (!active.empty()) {
    double f_min = active.front()->frequency;
    double f_max = f_min;
    for (const MirrorDrive* d : active) {
      f_min = std::min(f_min, d->frequency);
      f_max = std::max(f_max, d->frequency);
    }
    if (!(dt < 1.0 / (10.0 * f_max))) {
      throw std::invalid_argument(
          "dt = " + std::to_string(dt) + " violates dt < 1/(10 f_max) = " +
          std::to_string(1.0 / (10.0 * f_max)));
    }
    if (!(duration >= 20.0 / f_min)) {
      throw std::invalid_argument(
          "duration = " + std::to_string(duration) +
          " violates duration >= 20/f_min = " + std::to_string(20.0 / f_min));
    }
  }
  const auto count = static_cast<Eigen::Index>(std::llround(duration / dt));
  if (count < 2) {
    throw std::invalid_argument("duration/dt yields fewer than 2 samples");
  }
  SignalTrace trace;
  trace.dt = dt;
  trace.drives = drives;
  trace.samples.resize(count);
  for (Eigen::Index j = 0; j < count; ++j) {
    const TiltVector tilts = tilts_at(drives, static_cast<double>(j) * dt);
    trace.samples[j] = quad_signal(psi_D(config, tilts)).value;
  }
  return trace;
}

PowerSpectrum power_spectrum(const SignalTrace& trace) {
  const auto n = trace.samples.size();
  if (n < kMinSpectrumSamples) {
    throw std::invalid_argument("trace too short for a windowed spectrum (" +
                                std::to_string(n) + " < " +
                                std::to_string(kMinSpectrumSamples) +
                                " samples)");
  }
  // Periodic Hann window: bin-centered tones spread across exactly 3 bins.
  Eigen::ArrayXd window(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    window[j] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi *
                                     static_cast<double>(j) /
                                     static_cast<double>(n));
  }
  const double window_sum = window.sum();

  std::vector<double> windowed(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    windowed[static_cast<std::size_t>(j)] = trace.samples[j] * window[j];
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> transform;
  fft.fwd(transform, windowed);

  const Eigen::Index bins = n / 2 + 1;
  PowerSpectrum spectrum;
  spectrum.frequencies.resize(bins);
  spectrum.power.resize(bins);
  const double bin_width = 1.0 / trace.duration();
  for (Eigen::Index k = 0; k < bins; ++k) {
    const double calibrated =
        2.0 * std::abs(transform[static_cast<std::size_t>(k)]) / window_sum;
    spectrum.frequencies[k] = static_cast<double>(k) * bin_width;
    spectrum.power[k] = calibrated * calibrated;
  }

  std::vector<Eigen::Index> drive_bins;
  for (const MirrorDrive& d : trace.drives) {
    if (d.amplitude == 0.0) continue;
    const auto bin = static_cast<Eigen::Index>(
        std::llround(d.frequency / bin_width));
    drive_bins.push_back(bin);
    const Eigen::Index lo = std::max<Eigen::Index>(bin - kPeakHalfWindow, 0);
    const Eigen::Index hi =
        std::min<Eigen::Index>(bin + kPeakHalfWindow, bins - 1);
    if (lo > hi || bin >= bins) {
      throw std::invalid_argument("drive frequency " +
                                  std::to_string(d.frequency) +
                                  " lies outside the spectrum");
    }
    PeakInfo peak{spectrum.frequencies[lo], spectrum.power[lo]};
    for (Eigen::Index k = lo; k <= hi; ++k) {
      if (spectrum.power[k] > peak.power) {
        peak = PeakInfo{spectrum.frequencies[k], spectrum.power[k]};
      }
    }
    spectrum.peaks[d.mirror] = peak;
  }

  std::vector<double> off_peak;
  off_peak.reserve(static_cast<std::size_t>(bins));
  for (Eigen::Index k = 3; k < bins; ++k) {
    bool near_drive = false;
    for (const Eigen::Index b : drive_bins) {
      if (std::llabs(k - b) <= kFloorExclusion) {
        near_drive = true;
        break;
      }
    }
    if (!near_drive) off_peak.push_back(spectrum.power[k]);
  }
  spectrum.floor = median(std::move(off_peak));
  return spectrum;
}

double peak_ratio(const PowerSpectrum& spectrum, Mirror m1, Mirror m2) {
  for (const Mirror m : {m1, m2}) {
    if (spectrum.peaks.find(m) == spectrum.peaks.end()) {
      throw std::invalid_argument("mirror " + mirror_name(m) +
                                  " was not driven in this spectrum");
    }
  }
  return spectrum.peaks.at(m1).power / spectrum.peaks.at(m2).power;
}

}  // namespace nmzi
