#include <doctest.h>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "nmzi/scenario.hpp"

using namespace nmzi;

namespace {

std::string error_of(const std::string& text) {
  try {
    (void)parse_scenario(text);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

bool mentions(const std::string& message, const std::string& needle) {
  return message.find(needle) != std::string::npos;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("a minimal scenario receives the documented defaults") {
  const Scenario s = parse_scenario("alignment = destructive\n");
  CHECK(s.alignment == AlignmentMode::DestructiveInner);
  CHECK(s.sigma == 1.0);

  const double frequencies[5] = {283.0, 311.0, 337.0, 353.0, 397.0};
  for (int m = 0; m < 5; ++m) {
    CHECK(s.drives[m].mirror == kMirrors[m]);
    CHECK(s.drives[m].frequency == frequencies[m]);
    CHECK(s.drives[m].amplitude == 1e-3);
    CHECK(s.drives[m].phase == 0.0);
    CHECK(s.tilts[m] == 1e-3);
  }
  CHECK(s.rate == 16.0 * 397.0);
  CHECK(s.duration == 1.0);
  CHECK(s.outputs == std::set<OutputKind>{OutputKind::Trace,
                                          OutputKind::Spectrum,
                                          OutputKind::Peaks});
  CHECK(s.grid == KGrid{-3.0, 3.0, 601});
}

TEST_CASE("field assignments override the defaults") {
  const Scenario s = parse_scenario(
      "alignment = constructive\n"
      "sigma = 2\n"
      "mirror B amplitude = 5e-4\n"
      "mirror E amplitude = 0\n"
      "tilt A = -1e-4\n"
      "outputs = peaks coeffs\n"
      "grid kmin = -4\n");
  CHECK(s.sigma == 2.0);
  CHECK(s.drives[1].amplitude == 5e-4);
  CHECK(s.drives[3].amplitude == 0.0);
  CHECK(s.drives[0].amplitude == 2e-3);  // scales with sigma
  CHECK(s.tilts[0] == -1e-4);
  CHECK(s.tilts[1] == 5e-4);  // follows the amplitude
  CHECK(s.outputs == std::set<OutputKind>{OutputKind::Peaks,
                                          OutputKind::Coeffs});
  CHECK(s.grid.k_min == -4.0);
  CHECK(s.grid.k_max == 6.0);  // default, 3 sigma
}

TEST_CASE("comments, blank lines, and CRLF endings are tolerated") {
  const Scenario s = parse_scenario(
      "# experiment\r\n"
      "\r\n"
      "alignment = destructive  # trailing comment\r\n"
      "  sigma   =   1.5\r\n");
  CHECK(s.alignment == AlignmentMode::DestructiveInner);
  CHECK(s.sigma == 1.5);
}

TEST_CASE("malformed scenarios fail with the offending line") {
  CHECK(mentions(error_of("alignment = sideways\n"),
                 "destructive, constructive, blocked-c"));
  CHECK(mentions(error_of("# one\n\nwobble = 3\n"), "line 3"));
  CHECK(mentions(error_of("wobble = 3\n"), "unknown key 'wobble'"));
  CHECK(mentions(error_of("alignment = destructive\nmirror Q amplitude = 1\n"),
                 "valid: A, B, C, E, F"));
  CHECK(mentions(error_of("alignment = destructive\nmirror A wobble = 1\n"),
                 "frequency, amplitude, phase"));
  CHECK(mentions(error_of("alignment = destructive\ngrid spacing = 1\n"),
                 "kmin, kmax, n"));
  CHECK(mentions(error_of("alignment = destructive\nsigma = 1\nsigma = 2\n"),
                 "duplicate key 'sigma'"));
  CHECK(mentions(error_of("alignment = destructive\nmirror A amplitude\n"),
                 "expected 'key = value'"));
  CHECK(mentions(error_of("alignment = destructive\nsigma = fish\n"),
                 "sigma"));
  CHECK(mentions(error_of("alignment = destructive\noutputs = csv\n"),
                 "trace, spectrum, peaks, beamcurves, coeffs"));
  CHECK(mentions(error_of("sigma = 1\n"), "alignment"));
  CHECK(mentions(error_of("alignment = destructive\n = 3\n"), "line 2"));
}

TEST_CASE("semantic validation guards the model's working regime") {
  CHECK_THROWS_AS(parse_scenario("alignment = destructive\nsigma = -1\n"),
                  std::invalid_argument);
  // Amplitudes and static tilts beyond sigma leave the model's regime.
  CHECK_THROWS_AS(
      parse_scenario("alignment = destructive\nmirror A amplitude = 1.5\n"),
      std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario("alignment = destructive\ntilt B = -2\n"),
                  std::invalid_argument);
  // Harmonically related drives would stack their spectra.
  CHECK_THROWS_AS(parse_scenario(
                      "alignment = destructive\nmirror B frequency = 566\n"),
                  std::invalid_argument);
  // Sampling bounds.
  CHECK_THROWS_AS(parse_scenario("alignment = destructive\nrate = 100\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario("alignment = destructive\nduration = 0.01\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario("alignment = destructive\ngrid kmin = 1\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario("alignment = destructive\ngrid n = 1\n"),
                  std::invalid_argument);

  Scenario overridden = parse_scenario("alignment = destructive\n");
  overridden.rate = 100.0;
  CHECK_THROWS_AS(validate_scenario(overridden), std::invalid_argument);
}

TEST_CASE("canonical emission round-trips every scenario") {
  const Scenario minimal = parse_scenario("alignment = blocked-c\n");
  CHECK(parse_scenario(emit_scenario(minimal)) == minimal);

  for (const char* name : {"fig1a.scn", "fig1b.scn", "fig1c.scn"}) {
    CAPTURE(name);
    const Scenario s =
        parse_scenario(read_file(std::string(NMZI_SCENARIO_DIR) + "/" + name));
    CHECK(parse_scenario(emit_scenario(s)) == s);
  }
}

TEST_CASE("drives and tilts convert to the dynamics types") {
  const Scenario s = parse_scenario(
      "alignment = destructive\n"
      "mirror E amplitude = 0\n"
      "tilt C = 4e-4\n");
  const std::vector<MirrorDrive> drives = scenario_drives(s);
  REQUIRE(drives.size() == 5);
  CHECK(drives[3].amplitude == 0.0);

  const TiltVector tilts = scenario_tilts(s);
  CHECK(tilts.kappa_C == 4e-4);
  CHECK(tilts.kappa_A == 1e-3);
}
