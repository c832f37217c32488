#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nmzi/interferometer.hpp"

using namespace nmzi;

namespace {

InterferometerConfig config_with(AlignmentMode alignment) {
  return make_config(alignment, normalize_l2(1.0));
}

}  // namespace

TEST_CASE("default splitter moduli and path weights") {
  const SplitterSet s = default_splitters();
  CHECK(s.r_outer == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
  CHECK(s.t_outer == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-15));
  CHECK(s.rt_inner == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s.r_outer * s.r_outer + s.t_outer * s.t_outer ==
        doctest::Approx(1.0).epsilon(1e-15));

  const auto [c, a, b] = path_weights(config_with(AlignmentMode::DestructiveInner));
  CHECK(c == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(a == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(b == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));

  const auto [cc, ca, cb] =
      path_weights(config_with(AlignmentMode::ConstructiveInner));
  CHECK(ca == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(cb == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(cc == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const auto [bc, ba, bb] =
      path_weights(config_with(AlignmentMode::DestructiveInnerBlockedC));
  CHECK(bc == 0.0);
  CHECK(ba == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(bb == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("beam toward F carries one term per inner path") {
  const InterferometerConfig destructive =
      config_with(AlignmentMode::DestructiveInner);
  const TiltVector tilts{2e-4, -1e-4, 5e-4, 3e-5, -7e-5};

  const BeamState f = psi_F(destructive, tilts);
  REQUIRE(f.terms.size() == 2);
  const double w = 1.0 / std::sqrt(6.0);
  CHECK(f.terms[0].weight == doctest::Approx(w).epsilon(1e-15));
  CHECK(f.terms[1].weight == doctest::Approx(-w).epsilon(1e-15));
  CHECK(f.terms[0].shift ==
        tilts.kappa_E + tilts.kappa_A + tilts.kappa_F);
  CHECK(f.terms[1].shift ==
        tilts.kappa_E + tilts.kappa_B + tilts.kappa_F);

  const BeamState g = psi_F(config_with(AlignmentMode::ConstructiveInner), tilts);
  CHECK(g.terms[1].weight == doctest::Approx(w).epsilon(1e-15));
}

TEST_CASE("equal inner tilts leave no light toward F") {
  const InterferometerConfig config =
      config_with(AlignmentMode::DestructiveInner);
  TiltVector tilts;
  tilts.kappa_A = 3e-4;
  tilts.kappa_B = 3e-4;
  tilts.kappa_E = 0.7e-4;
  tilts.kappa_F = -2e-4;

  const Eigen::ArrayXd curve =
      evaluate(psi_F(config, tilts), KGrid{-3.0, 3.0, 2001});
  CHECK(curve.abs().maxCoeff() == 0.0);
}

TEST_CASE("unequal inner tilts make a bipolar lobe pair") {
  const InterferometerConfig config =
      config_with(AlignmentMode::DestructiveInner);
  TiltVector tilts;
  tilts.kappa_A = 1e-3;

  const BeamState f = psi_F(config, tilts);
  CHECK(evaluate_at(f, 0.5) > 0.0);
  CHECK(evaluate_at(f, -0.5) < 0.0);

  // Swapping the two inner tilts swaps the term weights, negating the beam
  // at every point exactly.
  TiltVector swapped;
  swapped.kappa_B = 1e-3;
  const KGrid grid;
  const Eigen::ArrayXd lhs = evaluate(f, grid);
  const Eigen::ArrayXd rhs = evaluate(psi_F(config, swapped), grid);
  CHECK((lhs + rhs).abs().maxCoeff() == 0.0);
}

TEST_CASE("lobe height grows linearly with the tilt difference") {
  const InterferometerConfig config =
      config_with(AlignmentMode::DestructiveInner);
  const KGrid grid;
  double previous = 0.0;
  for (double kappa : {1e-4, 2e-4, 4e-4}) {
    TiltVector tilts;
    tilts.kappa_A = kappa;
    const double height = evaluate(psi_F(config, tilts), grid).abs().maxCoeff();
    if (previous != 0.0) {
      CHECK(height / previous == doctest::Approx(2.0).epsilon(0.01));
    }
    previous = height;
  }
}

TEST_CASE("detector beam composition per alignment") {
  const TiltVector tilts{1e-4, -2e-4, 3e-4, 5e-5, -5e-5};

  const BeamState d = psi_D(config_with(AlignmentMode::DestructiveInner), tilts);
  REQUIRE(d.terms.size() == 3);
  CHECK(d.terms[0].weight == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(d.terms[0].shift == tilts.kappa_C);
  CHECK(d.terms[1].weight == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(d.terms[2].weight == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));

  const BeamState blocked =
      psi_D(config_with(AlignmentMode::DestructiveInnerBlockedC), tilts);
  REQUIRE(blocked.terms.size() == 2);
  CHECK(blocked.terms[0].shift ==
        tilts.kappa_E + tilts.kappa_A + tilts.kappa_F);

  const BeamState open = psi_D(config_with(AlignmentMode::ConstructiveInner), tilts);
  REQUIRE(open.terms.size() == 3);
  CHECK(open.terms[2].weight == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("energy bookkeeping at zero tilt") {
  const TiltVector still;
  CHECK(total_power(psi_D(config_with(AlignmentMode::ConstructiveInner), still)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(total_power(psi_D(config_with(AlignmentMode::DestructiveInner), still)) ==
        doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  CHECK(std::abs(total_power(
            psi_D(config_with(AlignmentMode::DestructiveInnerBlockedC), still))) <=
        1e-16);
}
