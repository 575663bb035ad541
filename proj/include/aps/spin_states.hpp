#pragma once

#include <aps/error.hpp>
#include <aps/multivector.hpp>
#include <aps/spacetime.hpp>

#include <array>
#include <cmath>
#include <string>

namespace aps {

/// P_n = ½(1 + n).
inline Multivector projector(const Vec3 &n) {
  return Multivector::paravector(0.5, n * 0.5);
}

namespace basis {
inline const Multivector P3 = Multivector::paravector(0.5, {0.0, 0.0, 0.5});
inline const Multivector P3bar = Multivector::paravector(0.5, {0.0, 0.0, -0.5});
} // namespace basis

namespace detail {
inline void require_unit(const Vec3 &n, const char *what) {
  const double len = n.norm();
  if (!(std::fabs(len - 1.0) <= 1e-9))
    throw NotUnit(std::string(what) + " has length " + std::to_string(len));
}
} // namespace detail

/// R = exp(e₂₁φ/2) exp(e₁₃θ/2) exp(e₂₁χ/2) with e₂₁ = −i e3 and e₁₃ = −i e2.
inline LorentzRotor euler_rotor(double phi, double theta, double chi) {
  return rotor_about({0, 0, 1}, phi) * rotor_about({0, 1, 0}, theta) *
         rotor_about({0, 0, 1}, chi);
}

/// Element of the left ideal (APS)P3. Its matrix form has a single
/// nonzero column.
class IdealSpinor {
public:
  IdealSpinor() = default;

  /// Projects x into the ideal: x P3.
  static IdealSpinor project(const Multivector &x) { return IdealSpinor(x * basis::P3); }

  /// Accepts x only if x P3 = x.
  static IdealSpinor checked(const Multivector &x, double eps = 1e-12) {
    const Multivector p = x * basis::P3;
    if (!approx_equal(p, x, eps, eps))
      throw InvalidState("element is not in the ideal (APS)P3");
    return IdealSpinor(p);
  }

  static IdealSpinor from_column(Complex up, Complex down) {
    // column (a, b) ↔ (a + b e1) P3 with complex scalars a, b
    const Multivector x = Multivector::complex_scalar(up) + basis::e1 * down;
    return IdealSpinor(x * basis::P3);
  }

  const Multivector &mv() const { return psi_; }

  /// Nonzero column of the matrix representation.
  std::array<Complex, 2> column() const {
    const Complex alpha = psi_.complex_part();
    const CVec3 v = psi_.complex_vector();
    return {alpha + v.z, v.x + Complex{0.0, 1.0} * v.y};
  }

  /// 2⟨ψψ†⟩_S.
  double norm() const { return 2.0 * scalar_like(psi_ * reversion(psi_)).real(); }

  IdealSpinor operator+(const IdealSpinor &o) const { return IdealSpinor(psi_ + o.psi_); }
  IdealSpinor operator*(double s) const { return IdealSpinor(psi_ * s); }

private:
  explicit IdealSpinor(const Multivector &x) : psi_(x) {}
  Multivector psi_;
};

/// Hermitian product of the columns, conj(col_a)·col_b.
inline Complex inner(const IdealSpinor &a, const IdealSpinor &b) {
  const auto ca = a.column(), cb = b.column();
  return std::conj(ca[0]) * cb[0] + std::conj(ca[1]) * cb[1];
}

struct UpDownExpansion {
  double theta = 0.0;
  double c_up = 1.0;   // cos(θ/2)
  double c_down = 0.0; // sin(θ/2)
  IdealSpinor up;      // ψ↑, with P3 ψ = c↑ ψ↑
  IdealSpinor down;    // ψ↓, with P̄3 ψ = c↓ ψ↓
};

/// Splits ψ = R P3 into eigenstates of e3. θ comes from the magnitudes of the
/// two projections, so the poles need no special case. When one amplitude
/// vanishes the missing partner is supplied by ψ↓ = −i e2 ψ↑ (or its inverse).
inline UpDownExpansion expand_up_down(const LorentzRotor &R) {
  const Multivector psi = R.mv() * basis::P3;
  const Multivector up_part = basis::P3 * psi;
  const Multivector down_part = basis::P3bar * psi;
  const double a = std::sqrt(std::fmax(0.0, IdealSpinor::project(up_part).norm()));
  const double b = std::sqrt(std::fmax(0.0, IdealSpinor::project(down_part).norm()));

  UpDownExpansion out;
  out.theta = 2.0 * std::atan2(b, a);
  out.c_up = std::cos(out.theta / 2.0);
  out.c_down = std::sin(out.theta / 2.0);
  const double scale = std::hypot(a, b);
  const Multivector minus_i_e2 = Multivector::bivector({0.0, -1.0, 0.0});
  const double tiny = 1e-12 * (scale > 0.0 ? scale : 1.0);
  if (a > tiny && b > tiny) {
    out.up = IdealSpinor::project(up_part / out.c_up);
    out.down = IdealSpinor::project(down_part / out.c_down);
  } else if (a > tiny) {
    out.up = IdealSpinor::project(up_part / out.c_up);
    out.down = IdealSpinor::project(minus_i_e2 * out.up.mv());
  } else {
    out.down = IdealSpinor::project(down_part / out.c_down);
    // ψ↑ = i e2 ψ↓ inverts ψ↓ = −i e2 ψ↑
    out.up = IdealSpinor::project(-minus_i_e2 * out.down.mv());
  }
  return out;
}

/// ϱ = ½(1 + P) with |P| ≤ 1; pure when |P| = 1.
class SpinDensity {
public:
  static SpinDensity pure(const Vec3 &s) {
    detail::require_unit(s, "spin direction");
    return SpinDensity(s);
  }
  static SpinDensity mixed(const Vec3 &P) {
    if (!(P.norm() <= 1.0 + 1e-12))
      throw InvalidState("polarization |P| = " + std::to_string(P.norm()) + " exceeds 1");
    return SpinDensity(P);
  }
  /// ψψ† of a normalized ideal spinor.
  static SpinDensity of(const IdealSpinor &psi) {
    const Multivector rho = psi.mv() * reversion(psi.mv());
    return mixed(rho.vector_part() * 2.0);
  }

  const Vec3 &polarization() const { return P_; }
  Multivector mv() const { return projector(P_); }
  bool is_pure(double eps = 1e-12) const { return std::fabs(P_.norm() - 1.0) <= eps; }

private:
  explicit SpinDensity(const Vec3 &P) : P_(P) {}
  Vec3 P_;
};

/// 2⟨P_n ϱ⟩_S = ½(1 + n·P).
inline double measure_probability(const SpinDensity &rho, const Vec3 &n) {
  detail::require_unit(n, "measurement axis");
  return 2.0 * scalar_like(projector(n) * rho.mv()).real();
}

/// P_n ϱ P_n, which equals 2⟨P_n ϱ⟩_S P_n.
inline Multivector filter(const SpinDensity &rho, const Vec3 &n) {
  detail::require_unit(n, "filter axis");
  const Multivector Pn = projector(n);
  return Pn * rho.mv() * Pn;
}

/// ⟨Ψ e3 Ψ† m⟩_S: the m component of the spin density ρ s.
inline double spin_component_distribution(const Multivector &Psi, const Vec3 &m) {
  return scalar_like(Psi * basis::e3 * reversion(Psi) * Multivector::vector(m)).real();
}

/// Same quantity in two-component form: 2⟨P3 Ψ† m Ψ P3⟩_S.
inline double spin_component_ideal(const Multivector &Psi, const Vec3 &m) {
  return 2.0 *
         scalar_like(basis::P3 * reversion(Psi) * Multivector::vector(m) * Psi * basis::P3).real();
}

struct UncertaintyStats {
  double delta_a = 0.0;   // √(1 − s_a²)
  double delta_b = 0.0;   // √(1 − s_b²)
  double mean_c = 0.0;    // |s_c|
  double slack = 0.0;     // Δa Δb − |s_c|
  bool satisfied = true;
};

/// Spread of the measured component s·n: √(1 − (s·n)²).
inline double spin_deviation(const Vec3 &s, const Vec3 &n) {
  const double c = s.dot(n);
  return std::sqrt(std::fmax(0.0, 1.0 - c * c));
}

/// Mean of ±1 outcomes along n: P(n) − P(−n) = s·n.
inline double filtered_mean(const Vec3 &s, const Vec3 &n) {
  const SpinDensity rho = SpinDensity::mixed(s);
  return measure_probability(rho, n) - measure_probability(rho, n * -1.0);
}

/// Δσ_a Δσ_b ≥ |⟨σ_c⟩| for a cyclic axis triple (a, b, c); default (x, y, z).
inline UncertaintyStats uncertainty_stats(const Vec3 &s, int a = 0, int b = 1, int c = 2,
                                          double eps = 1e-12) {
  detail::require_unit(s, "spin direction");
  const Vec3 ea = Vec3::unit(a), eb = Vec3::unit(b), ec = Vec3::unit(c);
  UncertaintyStats r;
  r.delta_a = spin_deviation(s, ea);
  r.delta_b = spin_deviation(s, eb);
  r.mean_c = std::fabs(filtered_mean(s, ec));
  r.slack = r.delta_a * r.delta_b - r.mean_c;
  r.satisfied = r.slack >= -eps;
  return r;
}

} // namespace aps
