#pragma once

#include <aps/dynamics.hpp>
#include <aps/error.hpp>
#include <aps/matrix_rep.hpp>
#include <aps/multivector.hpp>
#include <aps/spacetime.hpp>
#include <aps/spin_states.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace aps {

/// J = Ψ e0 Ψ†.
inline Paravector current(const Multivector &Psi) {
  return Paravector::from_multivector(Psi * reversion(Psi));
}

/// Pauli-Lubański spin distribution 𝔖 = Ψ e3 Ψ†.
inline Paravector spin_current(const Multivector &Psi) {
  return Paravector::from_multivector(Psi * basis::e3 * reversion(Psi));
}

/// 𝔍± = J ± 𝔖 = 2 Ψ P±3 Ψ†.
inline Paravector chiral_current(const Multivector &Psi, int sign) {
  return sign >= 0 ? current(Psi) + spin_current(Psi) : current(Psi) - spin_current(Psi);
}

/// p Ψ̄† − m Ψ.
inline Multivector classical_dirac_residual(const Multivector &Psi, const Paravector &p,
                                            double m) {
  return p.mv() * grade_involution(Psi) - Psi * m;
}

/// Spin biparavector S = −i Λ e3 Λ̄.
inline Multivector spin_biparavector(const LorentzRotor &L) {
  return basis::I * L.mv() * basis::e3 * clifford_conj(L.mv()) * -1.0;
}

/// i Ψ e3 + S Ψ, which vanishes for Ψ = ρ^{1/2} Λ.
inline Multivector commutator_identity_residual(double rho, const LorentzRotor &L) {
  const Multivector Psi = L.mv() * std::sqrt(rho);
  return basis::I * Psi * basis::e3 + spin_biparavector(L) * Psi;
}

enum class BispinorRep { Weyl, DiracPauli };

inline const char *to_string(BispinorRep r) {
  return r == BispinorRep::Weyl ? "weyl" : "dirac-pauli";
}

struct Bispinor {
  std::array<Complex, 4> c{};
  BispinorRep rep = BispinorRep::Weyl;

  Complex operator[](std::size_t k) const { return c[k]; }
};

namespace detail {
inline std::array<Complex, 2> ideal_column(const Multivector &x) {
  return IdealSpinor::project(x).column();
}
} // namespace detail

/// Weyl: (1/√2)(Ψ P3 ; Ψ̄† P3). Dirac-Pauli: (⟨Ψ⟩₊ P3 ; ⟨Ψ⟩₋ P3).
inline Bispinor to_bispinor(const Multivector &Psi, BispinorRep rep = BispinorRep::Weyl) {
  Bispinor b;
  b.rep = rep;
  if (rep == BispinorRep::Weyl) {
    const auto u = detail::ideal_column(Psi);
    const auto l = detail::ideal_column(grade_involution(Psi));
    const double s = 1.0 / std::numbers::sqrt2;
    b.c = {u[0] * s, u[1] * s, l[0] * s, l[1] * s};
  } else {
    const auto u = detail::ideal_column(parts(Psi, Part::Even));
    const auto l = detail::ideal_column(parts(Psi, Part::Odd));
    b.c = {u[0], u[1], l[0], l[1]};
  }
  return b;
}

/// The mixing (1/√2)[[1, 1], [1, −1]] is its own inverse.
inline Bispinor convert(const Bispinor &b, BispinorRep target) {
  if (b.rep == target)
    return b;
  const double s = 1.0 / std::numbers::sqrt2;
  Bispinor out;
  out.rep = target;
  for (std::size_t k = 0; k < 2; ++k) {
    out.c[k] = s * (b.c[k] + b.c[k + 2]);
    out.c[k + 2] = s * (b.c[k] - b.c[k + 2]);
  }
  return out;
}

inline Complex hermitian_product(const Bispinor &a, const Bispinor &b) {
  Complex s{};
  for (std::size_t k = 0; k < 4; ++k)
    s += std::conj(a.c[k]) * b.c[k];
  return s;
}

using Matrix4 = std::array<std::array<Complex, 4>, 4>;

inline Matrix4 operator*(const Matrix4 &a, const Matrix4 &b) {
  Matrix4 r{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k)
        r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline std::array<Complex, 4> operator*(const Matrix4 &a, const std::array<Complex, 4> &v) {
  std::array<Complex, 4> r{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      r[i] += a[i][k] * v[k];
  return r;
}

/// Weyl-representation γ^μ (upper index): γ^0 = [[0, 1], [1, 0]],
/// γ^k = [[0, −σ_k], [σ_k, 0]], so γ^μ p_μ = [[0, p], [p̄, 0]] in 2×2 blocks.
inline std::array<Matrix4, 4> gamma_weyl() {
  std::array<Matrix4, 4> g{};
  for (std::size_t i = 0; i < 2; ++i) {
    g[0][i][i + 2] = 1.0;
    g[0][i + 2][i] = 1.0;
  }
  for (int k = 1; k <= 3; ++k) {
    const MatrixRep s = to_rep(Multivector::vector(Vec3::unit(k - 1)));
    auto &G = g[static_cast<std::size_t>(k)];
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        G[static_cast<std::size_t>(r)][static_cast<std::size_t>(c + 2)] = -s(r, c);
        G[static_cast<std::size_t>(r + 2)][static_cast<std::size_t>(c)] = s(r, c);
      }
  }
  return g;
}

/// γ5 = −i γ_0 γ_1 γ_2 γ_3 with lower indices (γ_k = −γ^k), which is
/// diag(1, 1, −1, −1) here: ½(1 + γ5) keeps the Ψ P3 block.
inline Matrix4 gamma5_weyl() {
  const auto g = gamma_weyl();
  Matrix4 p = g[0] * g[1] * g[2] * g[3];
  // three lowered spatial indices flip the sign once
  for (auto &row : p)
    for (auto &z : row)
      z *= Complex{0.0, 1.0};
  return p;
}

/// ½(1 ± γ5) ψ for a Weyl bispinor.
inline Bispinor chiral_projection(const Bispinor &weyl, int sign) {
  Bispinor w = convert(weyl, BispinorRep::Weyl);
  const Matrix4 g5 = gamma5_weyl();
  const auto g5psi = g5 * w.c;
  const double s = sign >= 0 ? 1.0 : -1.0;
  Bispinor out;
  for (std::size_t k = 0; k < 4; ++k)
    out.c[k] = 0.5 * (w.c[k] + s * g5psi[k]);
  return out;
}

/// (γ^μ p_μ − m) ψ with p_μ = (p⁰, −p).
inline std::array<Complex, 4> dirac_momentum_residual(const Bispinor &weyl, const Paravector &p,
                                                      double m) {
  const Bispinor w = convert(weyl, BispinorRep::Weyl);
  const auto g = gamma_weyl();
  std::array<Complex, 4> r{};
  for (std::size_t mu = 0; mu < 4; ++mu) {
    const double p_lower = mu == 0 ? p[0] : -p[static_cast<int>(mu)];
    const auto gp = g[mu] * w.c;
    for (std::size_t k = 0; k < 4; ++k)
      r[k] += gp[k] * p_lower;
  }
  for (std::size_t k = 0; k < 4; ++k)
    r[k] -= m * w.c[k];
  return r;
}

struct LargeSmall {
  Multivector large; // ⟨Ψ⟩₊
  Multivector small; // ⟨Ψ⟩₋
};

inline LargeSmall large_small_split(const Multivector &Psi) {
  return {parts(Psi, Part::Even), parts(Psi, Part::Odd)};
}

/// p (m + p⁰)⁻¹ p ⟨Ψ⟩₊ − (p⁰ − m) ⟨Ψ⟩₊.
inline Multivector dirac2_residual(const Multivector &Psi, const Paravector &p, double m) {
  const Multivector even = parts(Psi, Part::Even);
  const Multivector pv = Multivector::vector(p.space());
  return pv * (pv * even) * (1.0 / (m + p.time())) - even * (p.time() - m);
}

namespace detail {
// Proper time ⟨x ū0⟩_S of a frame moving with velocity v.
inline double boosted_proper_time(const Vec3 &v, const Paravector &x) {
  if (!(v.norm() < 1.0))
    throw SuperluminalVelocity("|v| = " + std::to_string(v.norm()) + " is not below 1");
  const double gamma = 1.0 / std::sqrt(1.0 - v.dot(v));
  return minkowski_dot(x, Paravector(gamma, v * gamma));
}
} // namespace detail

/// Phase exp(−iω0⟨x ū0⟩_S) = exp[−iγω0(t − v·x)] of a boosted intrinsic rotation.
inline Complex debroglie_phase(const Particle &particle, const Vec3 &v, const Paravector &x) {
  return std::exp(Complex{0.0, -particle.omega0 * detail::boosted_proper_time(v, x)});
}

/// The same phase as the projected rotation exp(−i e3 ω0 τ) P3.
inline Multivector debroglie_wave(const Particle &particle, const Vec3 &v, const Paravector &x) {
  const double tau = detail::boosted_proper_time(v, x);
  return exponential(Multivector::bivector({0.0, 0.0, -particle.omega0 * tau})) * basis::P3;
}

/// Wavelength along v̂ measured from the zeros of Re(phase) at t = 0: zeros are
/// located by scanning and bisection, and their spacing is fit by least squares.
inline double debroglie_wavelength(const Particle &particle, const Vec3 &v, int zeros = 24) {
  if (!(v.norm() < 1.0))
    throw SuperluminalVelocity("|v| = " + std::to_string(v.norm()) + " is not below 1");
  if (!(v.norm() > 0.0))
    throw Error("dirac_bridge", "NoWave", "v = 0 has no spatial wavelength");
  const Vec3 dir = v.normalized();
  auto f = [&](double s) { return debroglie_phase(particle, v, Paravector(0.0, dir * s)).real(); };

  const double step = 0.05 / particle.omega0;
  std::vector<double> found;
  double a = 0.0, fa = f(a);
  while (static_cast<int>(found.size()) < zeros) {
    const double b = a + step;
    const double fb = f(b);
    if (fa == 0.0) {
      found.push_back(a);
    } else if (fa * fb < 0.0) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::fabs(hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      found.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  const double n = static_cast<double>(found.size());
  double si = 0, sx = 0;
  for (std::size_t k = 0; k < found.size(); ++k) {
    si += static_cast<double>(k);
    sx += found[k];
  }
  const double mi = si / n, mx = sx / n;
  double num = 0, den = 0;
  for (std::size_t k = 0; k < found.size(); ++k) {
    num += (static_cast<double>(k) - mi) * (found[k] - mx);
    den += (static_cast<double>(k) - mi) * (static_cast<double>(k) - mi);
  }
  return 2.0 * num / den; // consecutive zeros are half a wavelength apart
}

/// Ψ = c B(p) R exp(−i e3 ⟨x P̄⟩_S / ħ), P = p + eA: a free-particle de Broglie
/// wave with kinetic momentum p in a constant potential A.
struct PlaneWave {
  double amplitude = 1.0;
  Paravector p;
  double mass = 1.0;
  LorentzRotor rotor;
  Paravector A;
  double charge = 0.0;
  double hbar = 1.0;

  static PlaneWave on_shell(const Vec3 &momentum, double mass, const LorentzRotor &R = {},
                            double amplitude = 1.0) {
    PlaneWave w;
    w.amplitude = amplitude;
    w.mass = mass;
    w.rotor = R;
    w.p = Paravector(std::sqrt(mass * mass + momentum.dot(momentum)), momentum);
    return w;
  }

  Paravector canonical() const { return p + A * charge; }

  Multivector operator()(const Paravector &x) const {
    const double phase = minkowski_dot(x, canonical()) / hbar;
    const Multivector B = boost_from_momentum(p, mass).mv();
    return B * rotor.mv() * exponential(Multivector::bivector({0.0, 0.0, -phase})) * amplitude;
  }
};

inline constexpr std::size_t kMaxWaves = 64;

struct WaveSuperposition {
  std::vector<PlaneWave> waves;

  WaveSuperposition() = default;
  explicit WaveSuperposition(std::vector<PlaneWave> w) : waves(std::move(w)) {
    if (waves.size() > kMaxWaves)
      throw Error("dirac_bridge", "TooManyWaves",
                  "at most " + std::to_string(kMaxWaves) + " plane waves are supported");
  }

  Multivector operator()(const Paravector &x) const {
    Multivector s;
    for (const auto &w : waves)
      s += w(x);
    return s;
  }
};

namespace detail {
// ∂^μ f: ∂_t for μ = 0, −∂/∂x^k otherwise.
template <class F>
Multivector upper_derivative(const F &f, const Paravector &x, int mu, double h) {
  const Multivector d = central_difference(f, x, mu, h);
  return mu == 0 ? d : -d;
}
} // namespace detail

/// p^μ Ψ − (iħ ∂^μ Ψ e3 − e A^μ Ψ) by central differences. All waves share A
/// and charge; p^μ Ψ is the sum of each wave times its own kinetic p^μ.
inline Multivector momentum_operator_residual(const WaveSuperposition &psi, const Paravector &x,
                                              int mu, double h) {
  Multivector lhs;
  for (const auto &w : psi.waves)
    lhs += w(x) * w.p[mu];
  if (psi.waves.empty())
    return lhs;
  const PlaneWave &w0 = psi.waves.front();
  const Multivector d = detail::upper_derivative(psi, x, mu, h);
  const Multivector rhs = basis::I * d * basis::e3 * w0.hbar - psi(x) * (w0.charge * w0.A[mu]);
  return lhs - rhs;
}

struct CurrentDivergence {
  double plus = 0.0;  // ⟨∂̄𝔍₊⟩_S
  double minus = 0.0; // ⟨∂̄𝔍₋⟩_S
  double J = 0.0;
  double S = 0.0;
};

/// ⟨∂̄ j⟩_S = ∂_t j⁰ + ∇·j for J, 𝔖 and 𝔍±, by central differences of Ψ(x).
template <class Field>
CurrentDivergence conserved_currents(const Field &psi, const Paravector &x, double h) {
  auto divergence = [&](auto &&cur) {
    double s = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      const Paravector step = Paravector::unit(mu) * h;
      s += (cur(psi(x + step))[mu] - cur(psi(x - step))[mu]) / (2.0 * h);
    }
    return s;
  };
  CurrentDivergence d;
  d.J = divergence([](const Multivector &P) { return current(P); });
  d.S = divergence([](const Multivector &P) { return spin_current(P); });
  d.plus = d.J + d.S;
  d.minus = d.J - d.S;
  return d;
}

struct PauliSchrodinger {
  double exact_residual = 0.0;  // |p(m+p⁰)⁻¹p X − (H − V − m) X|
  double approx_residual = 0.0; // same with (m + p⁰)⁻¹ → (2m)⁻¹
  double gap = 0.0;             // difference between the two left-hand sides
  std::vector<std::string> warnings;
};

/// Second-order equation projected on X = ⟨Ψ⟩₊ P3 for a state of energy H in
/// a constant potential V, so the kinetic energy is p⁰ = H − V.
inline PauliSchrodinger pauli_schrodinger_limit(const Multivector &Psi, const Vec3 &p, double H,
                                                double V, double m) {
  const Multivector X = parts(Psi, Part::Even) * basis::P3;
  const Multivector pv = Multivector::vector(p);
  const double p0 = H - V;
  const Multivector ppX = pv * (pv * X);
  const Multivector exact = ppX * (1.0 / (m + p0));
  const Multivector approx = ppX * (1.0 / (2.0 * m));
  const Multivector rhs = X * (H - V - m);
  PauliSchrodinger out;
  out.exact_residual = (exact - rhs).norm();
  out.approx_residual = (approx - rhs).norm();
  out.gap = (approx - exact).norm();
  if (p.norm() > 0.2 * m)
    out.warnings.push_back("|p|/m above 0.2; the nonrelativistic limit is not accurate");
  return out;
}

} // namespace aps
