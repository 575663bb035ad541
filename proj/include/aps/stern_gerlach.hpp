#pragma once

#include <aps/dirac.hpp>
#include <aps/error.hpp>
#include <aps/multivector.hpp>
#include <aps/spacetime.hpp>
#include <aps/spin_states.hpp>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace aps {

/// Beam along e1 at speed v, split along e3 by an impulse ±Δv. The profile is
/// a normalized Gaussian of width σ along the splitting axis.
struct SGConfig {
  double theta = 0.0;
  double phi = 0.0;
  double chi = 0.0;
  double v = 0.01;
  double dv = 0.001;
  double sigma = 1.0;
  double z_min = 0.0; // z_min == z_max selects an automatic range
  double z_max = 0.0;
  std::size_t points = 10001;
};

inline constexpr double kSGValidityLimit = 0.1;

/// Throws ConfigOutOfRange on violated preconditions; returns warnings for
/// parameters outside the nonrelativistic regime.
inline std::vector<std::string> validate(const SGConfig &cfg) {
  auto fail = [](const std::string &m) { throw ConfigOutOfRange(m); };
  if (!(cfg.v > 0.0 && cfg.v < 1.0))
    fail("beam speed v must lie in (0, 1)");
  if (!(cfg.dv > 0.0 && cfg.dv < 1.0))
    fail("impulse dv must lie in (0, 1)");
  if (!(cfg.sigma > 0.0))
    fail("beam width sigma must be positive");
  if (cfg.phi != 0.0)
    fail("the split-beam closed forms assume phi = 0");
  if (cfg.points < 3)
    fail("grid needs at least 3 points");
  if (cfg.z_max < cfg.z_min)
    fail("z_max must not be below z_min");
  if (!std::isfinite(cfg.theta) || !std::isfinite(cfg.chi))
    fail("angles must be finite");
  std::vector<std::string> warnings;
  if (cfg.v > kSGValidityLimit)
    warnings.push_back("v above 0.1; linearized boosts lose accuracy");
  if (cfg.dv > kSGValidityLimit)
    warnings.push_back("dv above 0.1; linearized boosts lose accuracy");
  return warnings;
}

/// Ψ = 2B₊⟨P3ψ⟩₊ + 2B₋⟨P̄3ψ⟩₊ with B± = 1 + ½V±, V± = v e1 ± Δv e3.
struct SplitState {
  Multivector up;    // 2⟨P3ψ⟩₊
  Multivector down;  // 2⟨P̄3ψ⟩₊
  Vec3 V_plus, V_minus;
  double w_up = 1.0, w_down = 0.0;

  /// B± with the velocities scaled by eps (eps = 1 is the physical boost).
  Multivector boost(int sign, double eps = 1.0) const {
    return Multivector::paravector(1.0, (sign >= 0 ? V_plus : V_minus) * (0.5 * eps));
  }
  /// Amplitude at a point where the translated branch densities are ρ±.
  Multivector amplitude(double rho_plus, double rho_minus, double eps = 1.0) const {
    return boost(+1, eps) * up * std::sqrt(rho_plus) +
           boost(-1, eps) * down * std::sqrt(rho_minus);
  }
  Multivector amplitude() const { return amplitude(1.0, 1.0); }
};

inline SplitState split_state(const SGConfig &cfg) {
  validate(cfg);
  const Multivector psi = euler_rotor(cfg.phi, cfg.theta, cfg.chi).mv() * basis::P3;
  SplitState s;
  s.up = parts(basis::P3 * psi, Part::Even) * 2.0;
  s.down = parts(basis::P3bar * psi, Part::Even) * 2.0;
  s.V_plus = {cfg.v, 0.0, cfg.dv};
  s.V_minus = {cfg.v, 0.0, -cfg.dv};
  const double c = std::cos(cfg.theta / 2.0), sn = std::sin(cfg.theta / 2.0);
  s.w_up = c * c;
  s.w_down = sn * sn;
  return s;
}

inline double gaussian_density(double z, double center, double sigma) {
  const double u = (z - center) / sigma;
  return std::exp(-0.5 * u * u) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

/// ∫√(ρ₊ρ₋) for two unit Gaussians of width σ a distance d apart.
inline double gaussian_overlap(double d, double sigma) {
  const double r = d / (2.0 * sigma);
  return std::exp(-0.5 * r * r);
}

struct BeamCurrents {
  Paravector J;
  Paravector S;
};

/// Three-term linearized currents
///   J = ½ρ₊(1+V₊)(1+cosθ) + ½ρ₋(1+V₋)(1−cosθ) + √(ρ₊ρ₋) Δv e1 sinθ
///   𝔖 = ½ρ₊(e3+Δv)(1+cosθ) − ½ρ₋(e3−Δv)(1−cosθ) + √(ρ₊ρ₋) sinθ (e1+v).
inline BeamCurrents closed_form_currents(double theta, double v, double dv, double rho_plus,
                                         double rho_minus) {
  const double cp = 0.5 * (1.0 + std::cos(theta)), cm = 0.5 * (1.0 - std::cos(theta));
  const double st = std::sin(theta), g = std::sqrt(rho_plus * rho_minus);
  const Paravector Vp(1.0, {v, 0.0, dv}), Vm(1.0, {v, 0.0, -dv});
  BeamCurrents out;
  out.J = Vp * (rho_plus * cp) + Vm * (rho_minus * cm) + Paravector(0.0, {dv * g * st, 0.0, 0.0});
  out.S = Paravector(dv, {0, 0, 1}) * (rho_plus * cp) - Paravector(-dv, {0, 0, 1}) * (rho_minus * cm) +
          Paravector(v, {1, 0, 0}) * (g * st);
  return out;
}

/// Ψe0Ψ† and Ψe3Ψ† of the split amplitude with the exact products.
inline BeamCurrents direct_currents(const SplitState &s, double rho_plus, double rho_minus,
                                    double eps = 1.0) {
  const Multivector Psi = s.amplitude(rho_plus, rho_minus, eps);
  return {current(Psi), spin_current(Psi)};
}

/// Terms of the direct product up to first order in V±. The currents are
/// quadratic in eps, so J(0) + (J(1) − J(−1))/2 keeps exactly the linear part.
inline BeamCurrents linearized_currents(const SplitState &s, double rho_plus, double rho_minus) {
  const BeamCurrents c0 = direct_currents(s, rho_plus, rho_minus, 0.0);
  const BeamCurrents cp = direct_currents(s, rho_plus, rho_minus, 1.0);
  const BeamCurrents cm = direct_currents(s, rho_plus, rho_minus, -1.0);
  return {c0.J + (cp.J - cm.J) * 0.5, c0.S + (cp.S - cm.S) * 0.5};
}

enum class ProfileMode { ClosedForm, Direct, Linearized };

struct ProfilePoint {
  double z = 0.0;
  double rho_plus = 0.0;
  double rho_minus = 0.0;
  double rho = 0.0;           // w↑ρ₊ + w↓ρ₋
  double interference = 0.0;  // √(ρ₊ρ₋) |sinθ|
  Paravector J;
  Paravector S;
};

struct BeamProfile {
  double t = 0.0;
  double dz = 0.0;
  double w_up = 1.0, w_down = 0.0;
  std::vector<ProfilePoint> points;
  double total = 0.0;   // ∫ρ dz
  double overlap = 0.0; // ∫√(ρ₊ρ₋) dz
  std::vector<std::string> warnings;
};

namespace detail {
inline std::pair<double, double> sg_range(const SGConfig &cfg, double t) {
  if (cfg.z_max > cfg.z_min)
    return {cfg.z_min, cfg.z_max};
  const double half = cfg.dv * std::fabs(t) + 12.0 * cfg.sigma;
  return {-half, half};
}

// Trapezoid rule over samples f[lo..hi] with spacing dz.
inline double trapezoid(const std::vector<double> &f, std::size_t lo, std::size_t hi, double dz) {
  if (hi <= lo)
    return 0.0;
  double s = 0.5 * (f[lo] + f[hi]);
  for (std::size_t k = lo + 1; k < hi; ++k)
    s += f[k];
  return s * dz;
}
} // namespace detail

/// Profiles at time t: the branches are the Gaussian translated by ±Δv t.
inline BeamProfile profiles(const SGConfig &cfg, double t,
                            ProfileMode mode = ProfileMode::ClosedForm) {
  BeamProfile prof;
  prof.warnings = validate(cfg);
  const SplitState s = split_state(cfg);
  const auto [z0, z1] = detail::sg_range(cfg, t);
  const std::size_t n = cfg.points;
  prof.t = t;
  prof.dz = (z1 - z0) / static_cast<double>(n - 1);
  prof.w_up = s.w_up;
  prof.w_down = s.w_down;
  prof.points.resize(n);
  const double st = std::fabs(std::sin(cfg.theta));
  std::vector<double> rho(n), cross(n);
  for (std::size_t k = 0; k < n; ++k) {
    ProfilePoint &p = prof.points[k];
    p.z = z0 + prof.dz * static_cast<double>(k);
    p.rho_plus = gaussian_density(p.z, cfg.dv * t, cfg.sigma);
    p.rho_minus = gaussian_density(p.z, -cfg.dv * t, cfg.sigma);
    p.rho = s.w_up * p.rho_plus + s.w_down * p.rho_minus;
    cross[k] = std::sqrt(p.rho_plus * p.rho_minus);
    p.interference = cross[k] * st;
    BeamCurrents c;
    switch (mode) {
    case ProfileMode::ClosedForm:
      c = closed_form_currents(cfg.theta, cfg.v, cfg.dv, p.rho_plus, p.rho_minus);
      break;
    case ProfileMode::Direct:
      c = direct_currents(s, p.rho_plus, p.rho_minus);
      break;
    case ProfileMode::Linearized:
      c = linearized_currents(s, p.rho_plus, p.rho_minus);
      break;
    }
    p.J = c.J;
    p.S = c.S;
    rho[k] = p.rho;
  }
  prof.total = detail::trapezoid(rho, 0, n - 1, prof.dz);
  prof.overlap = detail::trapezoid(cross, 0, n - 1, prof.dz);
  return prof;
}

struct Outcomes {
  double p_up = 0.0;
  double p_down = 0.0;
  double separation = 0.0; // distance between branch centers
  double overlap = 0.0;    // ∫√(ρ₊ρ₋) dz at t_final
  std::vector<std::string> warnings;
};

/// Integrates ρ over the half-lines on either side of the midpoint between
/// the branch centers.
inline Outcomes measure_outcomes(const SGConfig &cfg, double t_final) {
  SGConfig grid = cfg;
  if (grid.points % 2 == 0)
    ++grid.points; // keeps the midpoint on a node
  if (!(grid.z_max > grid.z_min)) {
    const auto [a, b] = detail::sg_range(grid, t_final);
    grid.z_min = a;
    grid.z_max = b;
  } else {
    // symmetric about the midpoint so the split lands on a node
    const double half = std::fmax(std::fabs(grid.z_min), std::fabs(grid.z_max));
    grid.z_min = -half;
    grid.z_max = half;
  }
  const BeamProfile prof = profiles(grid, t_final);
  std::vector<double> rho(prof.points.size());
  for (std::size_t k = 0; k < rho.size(); ++k)
    rho[k] = prof.points[k].rho;
  const std::size_t mid = rho.size() / 2;
  const std::size_t last = rho.size() - 1;

  Outcomes out;
  out.warnings = prof.warnings;
  const double upper = detail::trapezoid(rho, mid, last, prof.dz);
  const double lower = detail::trapezoid(rho, 0, mid, prof.dz);
  // the up branch moves toward +z for t_final > 0
  out.p_up = t_final >= 0.0 ? upper : lower;
  out.p_down = t_final >= 0.0 ? lower : upper;
  out.separation = 2.0 * cfg.dv * std::fabs(t_final);
  out.overlap = prof.overlap;
  if (out.separation < 6.0 * cfg.sigma)
    out.warnings.push_back("Overlapping: branches separated by less than 6 sigma; overlap " +
                           std::to_string(out.overlap));
  return out;
}

} // namespace aps
