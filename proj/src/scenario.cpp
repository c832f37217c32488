#include "nmzi/scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nmzi {

namespace {

constexpr double kDefaultFrequencies[5] = {283.0, 311.0, 337.0, 353.0, 397.0};
constexpr double kDefaultAmplitudeFraction = 1e-3;  // of sigma
constexpr double kDefaultRateFactor = 16.0;         // of the fastest drive
constexpr double kMinCyclesSlowest = 64.0;          // sets the duration floor

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> words;
  std::istringstream in(s);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw std::invalid_argument("line " + std::to_string(line) + ": " + message);
}

double parse_double(int line, const std::string& key, const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty() || !std::isfinite(v)) {
    fail(line, key + ": '" + s + "' is not a finite number");
  }
  return v;
}

int parse_int(int line, const std::string& key, const std::string& s) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || s.empty()) {
    fail(line, key + ": '" + s + "' is not an integer");
  }
  return static_cast<int>(v);
}

int mirror_index(int line, const std::string& name) {
  if (name.size() == 1) {
    switch (name[0]) {
      case 'A': return 0;
      case 'B': return 1;
      case 'C': return 2;
      case 'E': return 3;
      case 'F': return 4;
      default: break;
    }
  }
  fail(line, "unknown mirror '" + name + "' (valid: A, B, C, E, F)");
}

const std::map<std::string, AlignmentMode>& alignment_names() {
  static const std::map<std::string, AlignmentMode> names = {
      {"destructive", AlignmentMode::DestructiveInner},
      {"constructive", AlignmentMode::ConstructiveInner},
      {"blocked-c", AlignmentMode::DestructiveInnerBlockedC},
  };
  return names;
}

std::string alignment_token(AlignmentMode mode) {
  for (const auto& [token, value] : alignment_names()) {
    if (value == mode) return token;
  }
  return "?";
}

const std::map<std::string, OutputKind>& output_names() {
  static const std::map<std::string, OutputKind> names = {
      {"trace", OutputKind::Trace},       {"spectrum", OutputKind::Spectrum},
      {"peaks", OutputKind::Peaks},       {"beamcurves", OutputKind::Beamcurves},
      {"coeffs", OutputKind::Coeffs},
  };
  return names;
}

std::string output_token(OutputKind kind) {
  for (const auto& [token, value] : output_names()) {
    if (value == kind) return token;
  }
  return "?";
}

std::string fmt(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

struct PendingScenario {
  std::optional<AlignmentMode> alignment;
  std::optional<double> sigma;
  std::optional<double> duration;
  std::optional<double> rate;
  std::optional<std::set<OutputKind>> outputs;
  std::array<std::optional<double>, 5> frequency;
  std::array<std::optional<double>, 5> amplitude;
  std::array<std::optional<double>, 5> phase;
  std::array<std::optional<double>, 5> tilt;
  std::optional<double> grid_kmin, grid_kmax;
  std::optional<int> grid_n;
};

void assign_entry(PendingScenario& p, int line,
                  const std::vector<std::string>& key,
                  const std::string& key_text, const std::string& value) {
  auto set = [&](auto& slot, auto parsed) {
    if (slot.has_value()) fail(line, "duplicate key '" + key_text + "'");
    slot = parsed;
  };
  if (key.size() == 1 && key[0] == "alignment") {
    const auto it = alignment_names().find(value);
    if (it == alignment_names().end()) {
      fail(line, "alignment '" + value +
                     "' is not one of: destructive, constructive, blocked-c");
    }
    set(p.alignment, it->second);
  } else if (key.size() == 1 && key[0] == "sigma") {
    set(p.sigma, parse_double(line, key_text, value));
  } else if (key.size() == 1 && key[0] == "duration") {
    set(p.duration, parse_double(line, key_text, value));
  } else if (key.size() == 1 && key[0] == "rate") {
    set(p.rate, parse_double(line, key_text, value));
  } else if (key.size() == 1 && key[0] == "outputs") {
    std::set<OutputKind> outputs;
    for (const std::string& word : split_words(value)) {
      const auto it = output_names().find(word);
      if (it == output_names().end()) {
        fail(line, "output '" + word +
                       "' is not one of: trace, spectrum, peaks, beamcurves, "
                       "coeffs");
      }
      outputs.insert(it->second);
    }
    if (outputs.empty()) fail(line, "outputs requires at least one entry");
    set(p.outputs, outputs);
  } else if (key.size() == 3 && key[0] == "mirror") {
    const int m = mirror_index(line, key[1]);
    if (key[2] == "frequency") {
      set(p.frequency[m], parse_double(line, key_text, value));
    } else if (key[2] == "amplitude") {
      set(p.amplitude[m], parse_double(line, key_text, value));
    } else if (key[2] == "phase") {
      set(p.phase[m], parse_double(line, key_text, value));
    } else {
      fail(line, "unknown mirror field '" + key[2] +
                     "' (valid: frequency, amplitude, phase)");
    }
  } else if (key.size() == 2 && key[0] == "tilt") {
    const int m = mirror_index(line, key[1]);
    set(p.tilt[m], parse_double(line, key_text, value));
  } else if (key.size() == 2 && key[0] == "grid") {
    if (key[1] == "kmin") {
      set(p.grid_kmin, parse_double(line, key_text, value));
    } else if (key[1] == "kmax") {
      set(p.grid_kmax, parse_double(line, key_text, value));
    } else if (key[1] == "n") {
      set(p.grid_n, parse_int(line, key_text, value));
    } else {
      fail(line, "unknown grid field '" + key[1] +
                     "' (valid: kmin, kmax, n)");
    }
  } else {
    fail(line, "unknown key '" + key_text + "'");
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  PendingScenario pending;
  std::istringstream in(text);
  std::string raw;
  int line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      fail(line_number, "expected 'key = value'");
    }
    const std::string key_text = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const std::vector<std::string> key = split_words(key_text);
    if (key.empty()) fail(line_number, "missing key before '='");
    assign_entry(pending, line_number, key, key_text, value);
  }
  if (!pending.alignment.has_value()) {
    throw std::invalid_argument(
        "scenario must set 'alignment' (destructive, constructive, or "
        "blocked-c)");
  }

  Scenario s;
  s.alignment = *pending.alignment;
  s.sigma = pending.sigma.value_or(1.0);
  for (int m = 0; m < 5; ++m) {
    s.drives[m].mirror = kMirrors[m];
    s.drives[m].frequency = pending.frequency[m].value_or(
        kDefaultFrequencies[m]);
    s.drives[m].amplitude = pending.amplitude[m].value_or(
        kDefaultAmplitudeFraction * s.sigma);
    s.drives[m].phase = pending.phase[m].value_or(0.0);
    s.tilts[m] = pending.tilt[m].value_or(s.drives[m].amplitude);
  }
  double f_min = s.drives[0].frequency;
  double f_max = f_min;
  for (const MirrorDrive& d : s.drives) {
    f_min = std::min(f_min, d.frequency);
    f_max = std::max(f_max, d.frequency);
  }
  s.rate = pending.rate.value_or(kDefaultRateFactor * f_max);
  // Whole-number default durations keep integer drive frequencies centered
  // on spectrum bins, so windowed peaks suffer no scalloping.
  s.duration =
      pending.duration.value_or(std::ceil(kMinCyclesSlowest / f_min));
  s.outputs = pending.outputs.value_or(std::set<OutputKind>{
      OutputKind::Trace, OutputKind::Spectrum, OutputKind::Peaks});
  s.grid.k_min = pending.grid_kmin.value_or(-3.0 * s.sigma);
  s.grid.k_max = pending.grid_kmax.value_or(3.0 * s.sigma);
  s.grid.n = pending.grid_n.value_or(601);

  validate_scenario(s);
  return s;
}

void validate_scenario(const Scenario& s) {
  if (!(s.sigma > 0.0)) {
    throw std::invalid_argument("sigma must be positive");
  }
  validate_drives(scenario_drives(s));
  for (int m = 0; m < 5; ++m) {
    if (s.drives[m].amplitude > s.sigma) {
      throw std::invalid_argument("mirror " + mirror_name(kMirrors[m]) +
                                  " amplitude exceeds sigma; tilts this "
                                  "large are outside the model");
    }
    if (std::fabs(s.tilts[m]) > s.sigma) {
      throw std::invalid_argument("tilt " + mirror_name(kMirrors[m]) +
                                  " exceeds sigma; tilts this large are "
                                  "outside the model");
    }
  }
  if (!(s.rate > 0.0)) {
    throw std::invalid_argument("rate must be positive");
  }
  if (!(s.duration > 0.0)) {
    throw std::invalid_argument("duration must be positive");
  }
  double f_min = 0.0;
  double f_max = 0.0;
  for (const MirrorDrive& d : s.drives) {
    if (d.amplitude == 0.0) continue;
    if (f_min == 0.0) f_min = f_max = d.frequency;
    f_min = std::min(f_min, d.frequency);
    f_max = std::max(f_max, d.frequency);
  }
  if (f_max > 0.0) {
    if (!(1.0 / s.rate < 1.0 / (10.0 * f_max))) {
      throw std::invalid_argument(
          "rate = " + std::to_string(s.rate) +
          " violates rate > 10 f_max = " + std::to_string(10.0 * f_max));
    }
    if (!(s.duration >= 20.0 / f_min)) {
      throw std::invalid_argument(
          "duration = " + std::to_string(s.duration) +
          " violates duration >= 20/f_min = " + std::to_string(20.0 / f_min));
    }
  }
  if (!(s.grid.k_min < 0.0 && 0.0 < s.grid.k_max)) {
    throw std::invalid_argument("grid must satisfy kmin < 0 < kmax");
  }
  if (s.grid.n < 2) {
    throw std::invalid_argument("grid n must be at least 2");
  }
  if (s.outputs.empty()) {
    throw std::invalid_argument("outputs must name at least one artifact");
  }
}

std::string emit_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "alignment = " << alignment_token(s.alignment) << "\n";
  out << "sigma = " << fmt(s.sigma) << "\n";
  out << "duration = " << fmt(s.duration) << "\n";
  out << "rate = " << fmt(s.rate) << "\n";
  out << "outputs =";
  for (const OutputKind kind : s.outputs) out << " " << output_token(kind);
  out << "\n";
  for (int m = 0; m < 5; ++m) {
    const std::string name = mirror_name(kMirrors[m]);
    out << "mirror " << name << " frequency = " << fmt(s.drives[m].frequency)
        << "\n";
    out << "mirror " << name << " amplitude = " << fmt(s.drives[m].amplitude)
        << "\n";
    out << "mirror " << name << " phase = " << fmt(s.drives[m].phase) << "\n";
  }
  for (int m = 0; m < 5; ++m) {
    out << "tilt " << mirror_name(kMirrors[m]) << " = " << fmt(s.tilts[m])
        << "\n";
  }
  out << "grid kmin = " << fmt(s.grid.k_min) << "\n";
  out << "grid kmax = " << fmt(s.grid.k_max) << "\n";
  out << "grid n = " << s.grid.n << "\n";
  return out.str();
}

std::vector<MirrorDrive> scenario_drives(const Scenario& s) {
  return {s.drives.begin(), s.drives.end()};
}

TiltVector scenario_tilts(const Scenario& s) {
  return TiltVector{s.tilts[0], s.tilts[1], s.tilts[2], s.tilts[3],
                    s.tilts[4]};
}

}  // namespace nmzi
