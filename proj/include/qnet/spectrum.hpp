// Per-sector exponents gamma_n in closed form and by quadrature, the critical
// point of both network families, the slope discontinuity of gamma_0 at the
// transition, and the temperature dictionary for constrained amplifier
// columns.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qnet/algebra.hpp"
#include "qnet/network.hpp"

namespace qnet {

// gamma_n from the trace identity
//   cosh(gamma_n) = cosh(theta) cosh(phi) - cos(2 pi n / N) sinh(theta) sinh(phi),
// principal branch (Re >= 0). Real and non-negative for su11 networks, purely
// imaginary with Im in [0, pi] for su2 ones.
inline Complex sector_exponent(const NetworkSpec& spec, int n) {
  detail::require_sector(spec, n);
  const double c = std::cos(2.0 * std::numbers::pi * n / spec.N);
  const Complex z = cosh_c(spec.theta.value()) * cosh_c(spec.phi.value()) -
                    c * sinh_c(spec.theta.value()) * sinh_c(spec.phi.value());
  return acosh_principal(z);
}

// gamma_0 of a constrained amplifier column as a plain real function of phi:
// cosh(gamma_0) = cosh^2(phi)/sinh(phi) - 1. Vanishes exactly at sinh(phi) = 1
// and grows on both sides, with a slope jump from -2 to +2 at the minimum.
inline double ising_gamma0(double phi) {
  if (!(phi > 0.0)) throw std::domain_error("ising_gamma0: requires phi > 0");
  const double z = std::cosh(phi) * std::cosh(phi) / std::sinh(phi) - 1.0;
  return acosh_principal({z, 0.0}).real();
}

namespace detail {

// Composite midpoint value of (1/pi) Int_0^pi log(2 (z0 - cos nu)) dnu.
// For z0 = cosh(gamma) >= 1 the exact value of this sum is
// gamma + log(1 + exp(-2 panels gamma)) / panels: spectrally accurate away
// from the transition, error log(2)/panels right at it.
inline double midpoint_log_moment(double z0, int panels) {
  if (panels < 1) throw std::invalid_argument("midpoint rule needs at least one panel");
  const double h = std::numbers::pi / panels;
  double acc = 0.0;
  for (int j = 0; j < panels; ++j) {
    const double nu = (j + 0.5) * h;
    const double arg = 2.0 * (z0 - std::cos(nu));
    if (!(arg > 0.0))
      throw std::domain_error("integral representation: non-positive integrand at an interior node");
    acc += std::log(arg);
  }
  return acc / panels;
}

}  // namespace detail

// Integral representation of gamma_n for a constrained amplifier column:
//   gamma_n = (1/pi) Int_0^pi log[2 (coth(phi) cosh(phi) - cos(2 pi n/N) - cos nu)] dnu.
// Evaluated by composite midpoint sums (interior nodes only, so the
// integrable log singularity that appears at nu = 0 when gamma_n = 0 is never
// sampled) combined over one panel doubling, 2 m(panels) - m(panels/2). The
// combination cancels the O(1/panels) error the singularity leaves behind --
// it is exact at the transition and bounded by 0.19/panels everywhere, while
// away from the transition both sums are already converged to round-off.
inline double sector_exponent_integral(const NetworkSpec& spec, int n, int panels) {
  if (!(spec.regime == Regime::su11 && spec.ising_constrained))
    throw std::domain_error("sector_exponent_integral: defined for constrained su11 networks only");
  detail::require_sector(spec, n);
  if (panels < 2 || panels % 2 != 0)
    throw std::invalid_argument("sector_exponent_integral: panels must be even and >= 2");
  const double phi = spec.phi.axis();
  const double z0 = std::cosh(phi) / std::tanh(phi) - std::cos(2.0 * std::numbers::pi * n / spec.N);
  return 2.0 * detail::midpoint_log_moment(z0, panels) - detail::midpoint_log_moment(z0, panels / 2);
}

// Critical parameters of the two families. Amplifiers: cosh(phi_c) = sqrt(2),
// node gain G_c = cosh^2(phi_c) = 2, with the temperature dictionary
// kT_c / eps = 2 / phi_c = 2.269. Splitters (mixer angle fixed at pi/4):
// phi'_c = pi/4, transmittance t_c = sin^2(phi'_c) = 1/2.
struct CriticalPoint {
  Regime regime;
  double phi_c;
  double gain_or_transmittance;
  std::optional<double> kTc_over_eps;
};

inline CriticalPoint critical_point(Regime regime) {
  if (regime == Regime::su11) {
    const double phi_c = std::acosh(std::sqrt(2.0));
    return {regime, phi_c, 2.0, 2.0 / phi_c};
  }
  return {regime, std::numbers::pi / 4.0, 0.5, std::nullopt};
}

// gamma_0 of the splitter network with the mixer angle fixed at pi/4:
// cos(gamma_0) = (cos(phi') + sin(phi')) / sqrt(2) = cos(phi' - pi/4),
// so gamma_0 = |phi' - pi/4|. Kept in arccos form to mirror how it arises;
// cosine arguments within a few ulps of 1 collapse to exactly zero, the same
// rounding floor acosh_principal applies at the transition.
inline double su2_gamma0(double phi_prime) {
  if (!(phi_prime > 0.0 && phi_prime < std::numbers::pi / 2.0))
    throw std::domain_error("su2_gamma0: requires 0 < phi' < pi/2");
  const double c = (std::cos(phi_prime) + std::sin(phi_prime)) / std::sqrt(2.0);
  if (c >= 1.0 - 1e-14) return 0.0;
  return std::acos(c);
}

// phi = 2 eps / kT.
struct TemperatureMapping {
  double epsilon;
  double kT;
};

inline Rapidity phi_from_temperature(const TemperatureMapping& map) {
  if (!(map.epsilon > 0.0) || !(map.kT > 0.0))
    throw std::domain_error("phi_from_temperature: requires epsilon > 0 and kT > 0");
  return Rapidity::su11(2.0 * map.epsilon / map.kT);
}

enum class RegimeLabel { quantum, classical, diabatic, adiabatic, critical };

inline const char* to_string(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::quantum: return "quantum";
    case RegimeLabel::classical: return "classical";
    case RegimeLabel::diabatic: return "diabatic";
    case RegimeLabel::adiabatic: return "adiabatic";
    case RegimeLabel::critical: return "critical";
  }
  return "?";
}

// Width of the critical window in the classification.
inline constexpr double kCriticalTol = 1e-10;

// Phase-sensitive ("quantum") below sinh(phi) = 1, phase-insensitive
// ("classical") above, for constrained amplifier networks; diabatic below
// phi' = pi/4 and adiabatic above for splitter networks with the pi/4 mixer.
inline RegimeLabel regime_classify(const NetworkSpec& spec) {
  if (spec.regime == Regime::su11) {
    if (!spec.ising_constrained)
      throw std::domain_error("regime_classify: undefined for an unconstrained amplifier network");
    const double s = std::sinh(spec.phi.axis());
    if (std::abs(s - 1.0) <= kCriticalTol) return RegimeLabel::critical;
    return s < 1.0 ? RegimeLabel::quantum : RegimeLabel::classical;
  }
  if (std::abs(spec.theta.axis() - std::numbers::pi / 4.0) > kCriticalTol)
    throw std::domain_error("regime_classify: splitter classification requires the pi/4 mixer angle");
  const double p = spec.phi.axis();
  if (std::abs(p - std::numbers::pi / 4.0) <= kCriticalTol) return RegimeLabel::critical;
  return p < std::numbers::pi / 4.0 ? RegimeLabel::diabatic : RegimeLabel::adiabatic;
}

inline RegimeLabel classify_ising_phi(double phi) {
  const double s = std::sinh(phi);
  if (std::abs(s - 1.0) <= kCriticalTol) return RegimeLabel::critical;
  return s < 1.0 ? RegimeLabel::quantum : RegimeLabel::classical;
}

// One grid point of a gamma_0 sweep: the exponent, one-sided slope estimates
// (gamma_0(phi) - gamma_0(phi - h))/h and (gamma_0(phi + h) - gamma_0(phi))/h,
// and the single-node gain cosh^2(phi).
struct SweepRow {
  double phi;
  double gamma0;
  double dleft;
  double dright;
  double gain;
  RegimeLabel label;
};

// gamma_0 of the constrained amplifier column over a phi grid. The exact
// critical angle is inserted as an extra row whenever it falls inside the
// range, so the slope discontinuity is sampled head-on instead of between
// grid points; everywhere else the two one-sided slopes agree to O(h).
inline std::vector<SweepRow> sweep_gamma0(double phi_lo, double phi_hi, int steps, double h) {
  if (!(phi_lo > 0.0 && phi_lo < phi_hi)) throw std::invalid_argument("sweep_gamma0: need 0 < phi_lo < phi_hi");
  if (steps < 2) throw std::invalid_argument("sweep_gamma0: need at least 2 steps");
  if (!(h > 0.0) || h >= phi_lo) throw std::invalid_argument("sweep_gamma0: need 0 < h < phi_lo");

  std::vector<double> grid;
  grid.reserve(steps + 1);
  for (int i = 0; i < steps; ++i) grid.push_back(phi_lo + (phi_hi - phi_lo) * i / (steps - 1));
  const double phi_c = critical_point(Regime::su11).phi_c;
  if (phi_c > phi_lo && phi_c < phi_hi &&
      std::none_of(grid.begin(), grid.end(), [&](double p) { return std::abs(p - phi_c) < 1e-12; }))
    grid.push_back(phi_c);
  std::sort(grid.begin(), grid.end());

  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double phi : grid) {
    const double g = ising_gamma0(phi);
    const double dl = (g - ising_gamma0(phi - h)) / h;
    const double dr = (ising_gamma0(phi + h) - g) / h;
    rows.push_back({phi, g, dl, dr, std::cosh(phi) * std::cosh(phi), classify_ising_phi(phi)});
  }
  return rows;
}

struct KinkReport {
  double phi;
  double jump;  // |dright - dleft| at the reported row
};

// The row with the largest one-sided slope disagreement. On a sweep across
// the transition this is the inserted critical row, where the jump approaches
// 4 (slopes -2 and +2); smooth rows disagree only by O(h).
inline KinkReport locate_kink(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("locate_kink: empty sweep");
  const SweepRow* best = &rows.front();
  for (const SweepRow& r : rows)
    if (std::abs(r.dright - r.dleft) > std::abs(best->dright - best->dleft)) best = &r;
  return {best->phi, std::abs(best->dright - best->dleft)};
}

// A slope jump counts as the transition only if it stands above every
// far-from-critical jump by this factor. Derivation test: the jump at the
// critical row is 4 + O(h^2) while smooth rows contribute O(h), so the margin
// at the default grid is several orders, not a near-miss.
inline constexpr double kKinkProminenceRatio = 10.0;

}  // namespace qnet
