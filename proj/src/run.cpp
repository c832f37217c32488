#include "nmzi/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nmzi/detector.hpp"

namespace nmzi {

namespace {

constexpr double kCoeffEpsilonFraction = 1e-4;  // of sigma

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string g6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string alignment_label(AlignmentMode mode) {
  switch (mode) {
    case AlignmentMode::ConstructiveInner:
      return "constructive";
    case AlignmentMode::DestructiveInner:
      return "destructive";
    case AlignmentMode::DestructiveInnerBlockedC:
      return "blocked-c";
  }
  return "?";
}

InterferometerConfig config_for(const Scenario& s) {
  return make_config(s.alignment, normalize_l2(s.sigma));
}

long write_csv(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.flush();
  if (!out) {
    throw std::runtime_error("cannot write file: " + path.string());
  }
  long newlines = 0;
  for (char c : content) {
    if (c == '\n') ++newlines;
  }
  return newlines - 1;  // data rows, excluding the header
}

}  // namespace

CoefficientSet compute_coefficients(const Scenario& scenario) {
  const InterferometerConfig config = config_for(scenario);
  const double epsilon = kCoeffEpsilonFraction * scenario.sigma;
  CoefficientSet set;
  set.analytic = analytic_coefficients(scenario.alignment);
  set.numeric = numeric_coefficients(config, epsilon);
  set.scale = sensitivity_scale(config, epsilon);
  return set;
}

std::string csv_trace(const SignalTrace& trace) {
  std::string out = "t,S\n";
  for (Eigen::Index j = 0; j < trace.samples.size(); ++j) {
    out += g17(static_cast<double>(j) * trace.dt);
    out += ',';
    out += g17(trace.samples[j]);
    out += '\n';
  }
  return out;
}

std::string csv_spectrum(const PowerSpectrum& spectrum) {
  std::string out = "frequency,power\n";
  for (Eigen::Index k = 0; k < spectrum.power.size(); ++k) {
    out += g17(spectrum.frequencies[k]);
    out += ',';
    out += g17(spectrum.power[k]);
    out += '\n';
  }
  return out;
}

std::string csv_peaks(const std::vector<PeakRow>& peaks) {
  std::string out = "mirror,frequency,power,floor_ratio\n";
  for (const PeakRow& row : peaks) {
    out += mirror_name(row.mirror);
    out += ',';
    out += g17(row.frequency);
    out += ',';
    out += g17(row.power);
    out += ',';
    out += g17(row.floor_ratio);
    out += '\n';
  }
  return out;
}

std::string csv_beamcurves(const Scenario& scenario) {
  const InterferometerConfig config = config_for(scenario);
  const TiltVector tilts = scenario_tilts(scenario);
  const BeamState f = psi_F(config, tilts);
  const BeamState d = psi_D(config, tilts);
  const BeamState a_route = make_state(
      f.base, {{std::abs(f.terms[0].weight), f.terms[0].shift}});
  const BeamState b_route = make_state(
      f.base, {{std::abs(f.terms[1].weight), f.terms[1].shift}});

  const Eigen::ArrayXd k = scenario.grid.points();
  const Eigen::ArrayXd col_f = evaluate(f, scenario.grid);
  const Eigen::ArrayXd col_a = evaluate(a_route, scenario.grid);
  const Eigen::ArrayXd col_b = evaluate(b_route, scenario.grid);
  const Eigen::ArrayXd col_d = evaluate(d, scenario.grid);

  std::string out = "k,psi_F,psi_A_term,psi_B_term,psi_D\n";
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    out += g17(k[i]);
    out += ',';
    out += g17(col_f[i]);
    out += ',';
    out += g17(col_a[i]);
    out += ',';
    out += g17(col_b[i]);
    out += ',';
    out += g17(col_d[i]);
    out += '\n';
  }
  return out;
}

std::string csv_coeffs(const CoefficientSet& coefficients) {
  const SensitivityVector& a = coefficients.analytic;
  const SensitivityVector& n = coefficients.numeric;
  const double analytic[5] = {a.c_A, a.c_B, a.c_C, a.c_E, a.c_F};
  const double numeric[5] = {n.c_A, n.c_B, n.c_C, n.c_E, n.c_F};
  std::string out = "mirror,analytic,numeric\n";
  for (int i = 0; i < 5; ++i) {
    out += mirror_name(kMirrors[i]);
    out += ',';
    out += g17(analytic[i]);
    out += ',';
    out += g17(numeric[i]);
    out += '\n';
  }
  return out;
}

RunReport run_scenario(const Scenario& scenario, const std::string& out_dir,
                       const std::string& stem) {
  const auto wants = [&](OutputKind kind) {
    return scenario.outputs.count(kind) != 0;
  };
  const bool needs_trace = wants(OutputKind::Trace) ||
                           wants(OutputKind::Spectrum) ||
                           wants(OutputKind::Peaks);

  RunReport report;
  SignalTrace trace;
  PowerSpectrum spectrum;
  if (needs_trace) {
    const InterferometerConfig config = config_for(scenario);
    trace = simulate(config, scenario_drives(scenario), scenario.duration,
                     1.0 / scenario.rate);
    spectrum = power_spectrum(trace);
    report.floor = spectrum.floor;
    for (Mirror m : kMirrors) {
      const auto it = spectrum.peaks.find(m);
      if (it == spectrum.peaks.end()) continue;
      const PeakInfo& peak = it->second;
      report.peaks.push_back({m, peak.frequency, peak.power,
                              peak.power / spectrum.floor});
    }
  }
  report.coefficients = compute_coefficients(scenario);

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  const auto emit = [&](OutputKind kind, const char* suffix,
                        auto&& make_content) {
    if (!wants(kind)) return;
    const std::filesystem::path path = dir / (stem + suffix);
    report.files.push_back({path.string(), write_csv(path, make_content())});
  };
  emit(OutputKind::Trace, "_trace.csv", [&] { return csv_trace(trace); });
  emit(OutputKind::Spectrum, "_spectrum.csv",
       [&] { return csv_spectrum(spectrum); });
  emit(OutputKind::Peaks, "_peaks.csv",
       [&] { return csv_peaks(report.peaks); });
  emit(OutputKind::Beamcurves, "_beamcurves.csv",
       [&] { return csv_beamcurves(scenario); });
  emit(OutputKind::Coeffs, "_coeffs.csv",
       [&] { return csv_coeffs(report.coefficients); });
  return report;
}

std::string render_report(const Scenario& scenario, const RunReport& report) {
  std::ostringstream out;
  out << "alignment: " << alignment_label(scenario.alignment) << "\n";
  out << "sigma: " << g6(scenario.sigma) << "\n";
  out << "sampling: rate " << g6(scenario.rate) << ", duration "
      << g6(scenario.duration) << " ("
      << std::llround(scenario.rate * scenario.duration) << " samples)\n";

  bool any_drive = false;
  for (int i = 0; i < 5; ++i) {
    const MirrorDrive& drive = scenario.drives[i];
    if (drive.amplitude == 0.0) continue;
    if (!any_drive) out << "drives:\n";
    any_drive = true;
    out << "  " << mirror_name(drive.mirror) << ": frequency "
        << g6(drive.frequency) << ", amplitude " << g6(drive.amplitude)
        << ", phase " << g6(drive.phase) << "\n";
  }

  if (!report.peaks.empty()) {
    out << "peaks:\n";
    out << "  mirror  frequency     power          peak/floor\n";
    for (const PeakRow& row : report.peaks) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "  %-6s  %-12s  %-13s  %s\n",
                    mirror_name(row.mirror).c_str(),
                    g6(row.frequency).c_str(), g6(row.power).c_str(),
                    g6(row.floor_ratio).c_str());
      out << buf;
    }
    out << "spectral floor: " << g6(report.floor) << "\n";
  }

  const bool blocked =
      scenario.alignment == AlignmentMode::DestructiveInnerBlockedC;
  out << (blocked ? "sensitivity (raw dS/dkappa; no C path to anchor to):\n"
                  : "sensitivity (relative to the C response):\n");
  out << "  mirror  analytic   numeric\n";
  const SensitivityVector& a = report.coefficients.analytic;
  const SensitivityVector& n = report.coefficients.numeric;
  const double analytic[5] = {a.c_A, a.c_B, a.c_C, a.c_E, a.c_F};
  const double numeric[5] = {n.c_A, n.c_B, n.c_C, n.c_E, n.c_F};
  for (int i = 0; i < 5; ++i) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "  %-6s  %-9s  %s\n",
                  mirror_name(kMirrors[i]).c_str(), g6(analytic[i]).c_str(),
                  g6(numeric[i]).c_str());
    out << buf;
  }
  out << "scale dS/dkappa_C: " << g6(report.coefficients.scale) << "\n";

  if (!report.files.empty()) {
    out << "wrote:\n";
    for (const FileEntry& file : report.files) {
      out << "  " << file.name << " (" << file.rows << " rows)\n";
    }
  }
  return out.str();
}

}  // namespace nmzi
