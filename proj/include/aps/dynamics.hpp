#pragma once

#include <aps/error.hpp>
#include <aps/multivector.hpp>
#include <aps/spacetime.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace aps {

/// Charged particle in natural units (c = ħ = 1 unless a caller injects
/// other constants). omega0 is the intrinsic rotation rate, m/ħ by default.
struct Particle {
  double charge = 1.0;
  double mass = 1.0;
  double omega0 = 1.0;

  static Particle make(double charge, double mass, std::optional<double> omega0 = {},
                       double hbar = 1.0) {
    if (!(mass > 0.0))
      throw InvalidParticle("mass must be positive, got " + std::to_string(mass));
    return {charge, mass, omega0.value_or(mass / hbar)};
  }
  double charge_to_mass() const { return charge / mass; }
};

/// Eigenspinor Λ(τ): Lorentz rotor from the instantaneous rest frame to the lab.
struct Eigenspinor {
  LorentzRotor L;
  double tau = 0.0;
};

using FieldFunction = std::function<Biparavector(const Paravector &)>;

/// Electromagnetic field F(x) = E + iB as a function of spacetime position.
struct EMField {
  FieldFunction at;
  std::optional<Biparavector> constant_value;

  static EMField constant(const Biparavector &F) {
    return {[F](const Paravector &) { return F; }, F};
  }
  static EMField from_function(FieldFunction f) { return {std::move(f), std::nullopt}; }
  static EMField electric_magnetic(const Vec3 &E, const Vec3 &B) { return constant({E, B}); }
};

inline std::array<Paravector, 4> tetrad(const Eigenspinor &s) { return tetrad(s.L); }

inline Paravector proper_velocity(const LorentzRotor &L) {
  return Paravector::from_multivector(L.mv() * reversion(L.mv()));
}

/// Spatial part of the Pauli-Lubański spin u3 = Λ e3 Λ†.
inline Vec3 spin_vector(const LorentzRotor &L) {
  return Paravector::from_multivector(sandwich(L, basis::e3)).space();
}

/// F_rest = Λ̄ F Λ.
inline Multivector rest_frame_field(const LorentzRotor &L, const Biparavector &F) {
  return clifford_conj(L.mv()) * F.mv() * L.mv();
}

namespace detail {
inline Multivector gauge_rotor(double omega0, double tau) {
  return exponential(Multivector::bivector({0.0, 0.0, -omega0 * tau}));
}
} // namespace detail

/// Constant-field solution Λ(τ) = exp(eFτ/2m) Λ(0) [exp(−i e3 ω0 τ)].
inline Eigenspinor evolve_analytic(const Eigenspinor &start, const Biparavector &F,
                                   const Particle &particle, double duration,
                                   bool gauge = false) {
  const double k = 0.5 * particle.charge_to_mass() * duration;
  Multivector L = exponential(F.mv() * k) * start.L.mv();
  if (gauge)
    L = L * detail::gauge_rotor(particle.omega0, duration);
  return {LorentzRotor::unchecked(L), start.tau + duration};
}

struct IntegratorOptions {
  double dtau = 1e-3;
  double duration = 1.0;
  bool gauge = false;         // add the rest-frame spin term −iω0 Λ e3
  bool project = true;        // rescale to Λ Λ̄ = 1 after each step
  std::size_t record_every = 1;
  double max_step_drift = 1e-6;
};

struct TrajectoryPoint {
  double tau = 0.0;
  Paravector x;
  LorentzRotor L;
  double unimodularity_error = 0.0;  // after projection
  double pre_projection_drift = 0.0; // RK4 step result before projection
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  double max_unimodularity_error = 0.0;
  double max_pre_projection_drift = 0.0;
  std::size_t steps = 0;

  const TrajectoryPoint &back() const { return points.back(); }
};

/// Classical RK4 on Λ̇ = (e/2m) F(x) Λ [− iω0 Λ e3], ẋ = Λ Λ†, with
/// unimodular re-projection after every step.
inline Trajectory evolve_numeric(const Eigenspinor &start, const Paravector &x0,
                                 const EMField &field, const Particle &particle,
                                 const IntegratorOptions &opt) {
  if (!(opt.dtau > 0.0))
    throw StepTooLarge("dtau must be positive");
  if (!(opt.duration >= 0.0))
    throw StepTooLarge("duration must be non-negative");

  const double half_qm = 0.5 * particle.charge_to_mass();
  const Multivector spin_gen = Multivector::bivector({0.0, 0.0, -particle.omega0});

  struct State {
    Multivector L;
    Multivector x;
  };
  auto deriv = [&](const State &s) -> State {
    const Paravector pos = Paravector::from_multivector(s.x);
    Multivector dL = field.at(pos).mv() * s.L * half_qm;
    if (opt.gauge)
      dL += s.L * spin_gen;
    return {dL, s.L * reversion(s.L)};
  };
  auto axpy = [](const State &s, const State &d, double h) -> State {
    return {s.L + d.L * h, s.x + d.x * h};
  };

  const auto steps = static_cast<std::size_t>(std::ceil(opt.duration / opt.dtau - 1e-9));
  const double h = steps > 0 ? opt.duration / static_cast<double>(steps) : 0.0;
  const std::size_t every = opt.record_every == 0 ? 1 : opt.record_every;

  Trajectory traj;
  traj.steps = steps;
  State s{start.L.mv(), x0.mv()};
  const double err0 = LorentzRotor::unimodularity_error(s.L);
  traj.points.push_back({start.tau, x0, start.L, err0, err0});
  traj.max_unimodularity_error = err0;

  for (std::size_t n = 1; n <= steps; ++n) {
    const State k1 = deriv(s);
    const State k2 = deriv(axpy(s, k1, 0.5 * h));
    const State k3 = deriv(axpy(s, k2, 0.5 * h));
    const State k4 = deriv(axpy(s, k3, h));
    State next{s.L + (k1.L + k2.L * 2.0 + k3.L * 2.0 + k4.L) * (h / 6.0),
               s.x + (k1.x + k2.x * 2.0 + k3.x * 2.0 + k4.x) * (h / 6.0)};
    // Position stays a real paravector.
    next.x = Paravector::from_multivector(next.x).mv();

    const double drift = LorentzRotor::unimodularity_error(next.L);
    if (!(drift <= opt.max_step_drift))
      throw StepTooLarge("step " + std::to_string(n) + ": |Λ Λ̄ − 1| = " +
                         std::to_string(drift) + " before projection");
    if (opt.project)
      next.L = unimodular_projection(next.L);
    const double err = LorentzRotor::unimodularity_error(next.L);

    traj.max_pre_projection_drift = std::fmax(traj.max_pre_projection_drift, drift);
    traj.max_unimodularity_error = std::fmax(traj.max_unimodularity_error, err);
    s = next;
    if (n % every == 0 || n == steps)
      traj.points.push_back({start.tau + h * static_cast<double>(n),
                             Paravector::from_multivector(s.x), LorentzRotor::unchecked(s.L),
                             err, drift});
  }
  return traj;
}

struct PrecessionRates {
  double cyclotron = 0.0; // rotation rate of the velocity in the e1e2 plane
  double larmor = 0.0;    // rotation rate of the spin vector in the e1e2 plane
  double ratio = 0.0;     // larmor / cyclotron
};

struct PrecessionOptions {
  int periods = 4;
  int steps_per_period = 2000;
  double speed = 0.01;       // initial speed along e1
  double spin_tilt = 1.0;    // polar angle of the initial spin from e3
};

namespace detail {

// Least-squares slope of the unwrapped phase of (x + i y) against tau.
inline double phase_rate(const std::vector<double> &tau, const std::vector<double> &x,
                         const std::vector<double> &y) {
  std::vector<double> phase(tau.size());
  double prev = 0.0, offset = 0.0;
  for (std::size_t k = 0; k < tau.size(); ++k) {
    const double raw = std::atan2(y[k], x[k]);
    if (k > 0) {
      const double d = raw - prev;
      if (d > std::numbers::pi)
        offset -= 2.0 * std::numbers::pi;
      else if (d < -std::numbers::pi)
        offset += 2.0 * std::numbers::pi;
    }
    prev = raw;
    phase[k] = raw + offset;
  }
  const double n = static_cast<double>(tau.size());
  double st = 0, sp = 0;
  for (std::size_t k = 0; k < tau.size(); ++k) {
    st += tau[k];
    sp += phase[k];
  }
  const double mt = st / n, mp = sp / n;
  double num = 0, den = 0;
  for (std::size_t k = 0; k < tau.size(); ++k) {
    num += (tau[k] - mt) * (phase[k] - mp);
    den += (tau[k] - mt) * (tau[k] - mt);
  }
  return num / den;
}

} // namespace detail

/// Runs one trajectory in F = iB e3 with the spin gauge term and extracts the
/// cyclotron rate (velocity) and Larmor rate (spin) by phase regression over
/// an integer number of cyclotron periods.
inline PrecessionRates cyclotron_larmor_rates(const Particle &particle, double B,
                                              const PrecessionOptions &opt = {}) {
  if (!(B > 0.0))
    throw Error("dynamics", "InvalidField", "cyclotron_larmor_ratio requires B > 0");
  const double wc = std::fabs(particle.charge_to_mass()) * B;
  const double period = 2.0 * std::numbers::pi / wc;
  double dtau = period / opt.steps_per_period;
  if (particle.omega0 > 0.0)
    dtau = std::fmin(dtau, 2.0 * std::numbers::pi / particle.omega0 / opt.steps_per_period);

  const LorentzRotor L0 = boost_from_velocity({opt.speed, 0.0, 0.0}) *
                          rotor_about({0.0, 1.0, 0.0}, opt.spin_tilt);
  IntegratorOptions io;
  io.duration = opt.periods * period;
  io.dtau = dtau;
  io.gauge = true;
  io.record_every =
      std::max<std::size_t>(1, static_cast<std::size_t>(io.duration / dtau) / 4000);
  const Trajectory traj = evolve_numeric({L0, 0.0}, Paravector{}, EMField::constant({{}, {0, 0, B}}),
                                         particle, io);

  std::vector<double> tau, vx, vy, sx, sy;
  for (const auto &p : traj.points) {
    const Vec3 v = proper_velocity(p.L).space();
    const Vec3 s = spin_vector(p.L);
    tau.push_back(p.tau);
    vx.push_back(v.x);
    vy.push_back(v.y);
    sx.push_back(s.x);
    sy.push_back(s.y);
  }
  PrecessionRates r;
  r.cyclotron = detail::phase_rate(tau, vx, vy);
  r.larmor = detail::phase_rate(tau, sx, sy);
  r.ratio = r.larmor / r.cyclotron;
  return r;
}

inline double cyclotron_larmor_ratio(const Particle &particle, double B,
                                     const PrecessionOptions &opt = {}) {
  return cyclotron_larmor_rates(particle, B, opt).ratio;
}

struct RotationShift {
  double exact_rate = 0.0;        // |2ω0 ŝ − (e/m) B|
  double first_order_rate = 0.0;  // 2ω0 − (e/m) ŝ·B
  double exact_shift = 0.0;       // exact_rate − 2ω0
  double first_order_shift = 0.0; // −(e/m) ŝ·B
  Vec3 moment;                    // e ħ ŝ / 2m
  double interaction_energy = 0.0; // −μ·B
  double threshold_field = 0.0;    // 2ω0 m / |e|
  std::vector<std::string> warnings;
};

/// Shift of the total spatial rotation rate of a particle at rest when a
/// magnetic field B is added to its intrinsic rotation 2ω0 about ŝ.
inline RotationShift magnetic_rotation_shift(const Particle &particle, const Vec3 &B,
                                             const Vec3 &s_hat, double hbar = 1.0) {
  const Vec3 s = s_hat.normalized();
  const double qm = particle.charge_to_mass();
  RotationShift r;
  r.exact_rate = (s * (2.0 * particle.omega0) - B * qm).norm();
  r.first_order_rate = 2.0 * particle.omega0 - qm * s.dot(B);
  r.exact_shift = r.exact_rate - 2.0 * particle.omega0;
  r.first_order_shift = -qm * s.dot(B);
  r.moment = s * (particle.charge * hbar / (2.0 * particle.mass));
  r.interaction_energy = -r.moment.dot(B);
  r.threshold_field = 2.0 * particle.omega0 / std::fabs(qm);
  if (B.norm() > 0.01 * r.threshold_field)
    r.warnings.push_back("|B| exceeds 1% of 2 omega0 m/e; first-order expansion degraded");
  return r;
}

/// Potential A(x) and source j(x) describing a field through F = ⟨∂Ā⟩_V.
struct PotentialField {
  std::function<Paravector(const Paravector &)> potential;
  std::function<Paravector(const Paravector &)> current; // may be empty (j = 0)
  double permeability = 1.0;
};

struct MaxwellCheck {
  Multivector residual; // ∂̄F − μ j̄
  Biparavector field;   // ⟨∂Ā⟩_V
  double lorenz_scalar = 0.0; // ⟨∂Ā⟩_S (zero in Lorenz gauge)
  std::optional<double> field_mismatch; // |F_numeric − F_given| when F is supplied
};

namespace detail {

// e^μ for the derivative ∂ = e^μ ∂_μ = ∂_t − ∇.
inline Multivector upper_basis(int mu) {
  return mu == 0 ? Paravector::unit(0).mv() : -Paravector::unit(mu).mv();
}

template <class F>
Multivector central_difference(const F &f, const Paravector &x, int mu, double h) {
  const Paravector step = Paravector::unit(mu) * h;
  return (f(x + step) - f(x - step)) * (0.5 / h);
}

} // namespace detail

/// ⟨∂Ā⟩ at x by central differences; returns the full multivector.
inline Multivector potential_derivative(const PotentialField &pf, const Paravector &x, double h) {
  auto abar = [&](const Paravector &y) { return clifford_conj(pf.potential(y).mv()); };
  Multivector d;
  for (int mu = 0; mu < 4; ++mu)
    d += detail::upper_basis(mu) * detail::central_difference(abar, x, mu, h);
  return d;
}

inline MaxwellCheck maxwell_residual(const PotentialField &pf, const Paravector &x, double h,
                                     const EMField *given = nullptr) {
  auto field_at = [&](const Paravector &y) {
    return parts(potential_derivative(pf, y, h), Part::Vector);
  };
  Multivector dbarF;
  for (int mu = 0; mu < 4; ++mu)
    dbarF += clifford_conj(detail::upper_basis(mu)) * detail::central_difference(field_at, x, mu, h);

  const Paravector j = pf.current ? pf.current(x) : Paravector{};
  MaxwellCheck out;
  out.residual = dbarF - clifford_conj(j.mv()) * pf.permeability;
  const Multivector dA = potential_derivative(pf, x, h);
  out.field = Biparavector::from_multivector(dA);
  out.lorenz_scalar = dA[Multivector::S];
  if (given && given->at)
    out.field_mismatch = (parts(dA, Part::Vector) - given->at(x).mv()).norm();
  return out;
}

} // namespace aps
