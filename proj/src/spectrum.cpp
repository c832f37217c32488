#include "nmzi/spectrum.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace nmzi {

namespace {

constexpr double kWarnFraction = 0.1;      // |shift| above sigma/10 warns
constexpr double kSupportSigmas = 12.0;    // quadrature domain half-width
constexpr double kQuadratureTol = 1e-12;   // of gross power, per half line
constexpr double kAgreementTol = 1e-10;    // closed form vs quadrature

void default_warning_handler(const std::string& message) {
  std::fprintf(stderr, "warning: %s\n", message.c_str());
}

WarningHandler& warning_handler() {
  static WarningHandler handler = default_warning_handler;
  return handler;
}

void guard_shifts(const BaseGaussian& base, const std::vector<Term>& terms) {
  double worst = 0.0;
  for (const Term& t : terms) worst = std::max(worst, std::fabs(t.shift));
  if (worst > base.sigma) {
    throw std::domain_error("beam term shift " + std::to_string(worst) +
                            " exceeds sigma " + std::to_string(base.sigma) +
                            "; tilts this large are outside the model");
  }
  if (worst > kWarnFraction * base.sigma) {
    warning_handler()("beam term shift " + std::to_string(worst) +
                      " exceeds sigma/10; small-tilt linearization degrades");
  }
}

double sqrt_half_pi() { return std::sqrt(std::numbers::pi / 2.0); }

// Full-line integral of the cross term of two shifted base Gaussians:
// integral N^2 exp(-(k-a)^2/s^2) exp(-(k-b)^2/s^2) dk
//   = N^2 s sqrt(pi/2) exp(-(a-b)^2 / (2 s^2)).
double pair_mass(const BaseGaussian& base, double a, double b) {
  const double d = (a - b) / base.sigma;
  return base.norm * base.norm * base.sigma * sqrt_half_pi() *
         std::exp(-0.5 * d * d);
}

// Fraction of a pair's mass on the chosen half line:
// (1 + sign * erf((a+b) / (sqrt(2) s))) / 2.
double pair_half_fraction(const BaseGaussian& base, double a, double b,
                          HalfLine side) {
  const double sign = side == HalfLine::Positive ? 1.0 : -1.0;
  return 0.5 * (1.0 + sign * std::erf((a + b) /
                                      (std::sqrt(2.0) * base.sigma)));
}

}  // namespace

BaseGaussian normalize_l2(double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("sigma must be positive, got " +
                                std::to_string(sigma));
  }
  return BaseGaussian{sigma,
                      std::pow(2.0 / (std::numbers::pi * sigma * sigma), 0.25)};
}

double gaussian_amplitude(const BaseGaussian& base, double k) {
  const double u = k / base.sigma;
  return base.norm * std::exp(-u * u);
}

void set_validity_warning_handler(WarningHandler handler) {
  warning_handler() = handler ? std::move(handler) : default_warning_handler;
}

BeamState make_state(const BaseGaussian& base, std::vector<Term> terms) {
  guard_shifts(base, terms);
  return BeamState{base, std::move(terms)};
}

BeamState shift(const BeamState& state, double kappa) {
  BeamState out = state;
  for (Term& t : out.terms) t.shift += kappa;
  guard_shifts(out.base, out.terms);
  return out;
}

BeamState scale(const BeamState& state, double w) {
  BeamState out = state;
  for (Term& t : out.terms) t.weight *= w;
  return out;
}

BeamState superpose(const BeamState& a, const BeamState& b) {
  if (a.base.sigma != b.base.sigma || a.base.norm != b.base.norm) {
    throw std::invalid_argument(
        "superpose requires both states to share one base Gaussian");
  }
  BeamState out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

Eigen::ArrayXd KGrid::points() const {
  return Eigen::ArrayXd::LinSpaced(n, k_min, k_max);
}

double evaluate_at(const BeamState& state, double k) {
  double sum = 0.0;
  for (const Term& t : state.terms) {
    sum += t.weight * gaussian_amplitude(state.base, k - t.shift);
  }
  return sum;
}

Eigen::ArrayXd evaluate(const BeamState& state, const KGrid& grid) {
  if (!(grid.k_min < 0.0 && 0.0 < grid.k_max)) {
    throw std::invalid_argument("grid must straddle k = 0");
  }
  if (grid.n < 2) {
    throw std::invalid_argument("grid needs at least 2 points");
  }
  const Eigen::ArrayXd k = grid.points();
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(grid.n);
  for (const Term& t : state.terms) {
    out += t.weight * state.base.norm *
           (-((k - t.shift) / state.base.sigma).square()).exp();
  }
  return out;
}

double half_line_power_closed(const BeamState& state, HalfLine side) {
  double sum = 0.0;
  const auto& terms = state.terms;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j < terms.size(); ++j) {
      sum += terms[i].weight * terms[j].weight *
             pair_mass(state.base, terms[i].shift, terms[j].shift) *
             pair_half_fraction(state.base, terms[i].shift, terms[j].shift,
                                side);
    }
  }
  return sum;
}

QuadratureResult half_line_power_quadrature(const BeamState& state,
                                            HalfLine side, double abs_tol) {
  const double reach = kSupportSigmas * state.base.sigma;
  const double lo = side == HalfLine::Positive ? 0.0 : -reach;
  const double hi = side == HalfLine::Positive ? reach : 0.0;
  auto integrand = [&state](double k) {
    const double a = evaluate_at(state, k);
    return a * a;
  };
  return integrate_adaptive(integrand, lo, hi, abs_tol);
}

double half_line_power(const BeamState& state, HalfLine side) {
  const double closed = half_line_power_closed(state, side);
  if (state.terms.empty()) return closed;
  const double gross = gross_power(state);
  const double quad =
      half_line_power_quadrature(state, side,
                                 std::max(kQuadratureTol * gross, 1e-300))
          .value;
  const double allowed =
      std::max(kAgreementTol * std::fabs(closed), kQuadratureTol * gross);
  const double diff = std::fabs(quad - closed);
  if (diff > allowed) {
    throw QuadratureError("half-line power routes disagree: closed form " +
                              std::to_string(closed) + ", quadrature " +
                              std::to_string(quad) + ", difference " +
                              std::to_string(diff) + " exceeds " +
                              std::to_string(allowed),
                          diff);
  }
  return closed;
}

double total_power(const BeamState& state) {
  double sum = 0.0;
  const auto& terms = state.terms;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j < terms.size(); ++j) {
      sum += terms[i].weight * terms[j].weight *
             pair_mass(state.base, terms[i].shift, terms[j].shift);
    }
  }
  return sum;
}

double gross_power(const BeamState& state) {
  double sum = 0.0;
  const auto& terms = state.terms;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j < terms.size(); ++j) {
      sum += std::fabs(terms[i].weight * terms[j].weight) *
             pair_mass(state.base, terms[i].shift, terms[j].shift);
    }
  }
  return sum;
}

}  // namespace nmzi
