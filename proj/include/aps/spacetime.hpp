#pragma once

#include <aps/error.hpp>
#include <aps/multivector.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <string>

namespace aps {

/// Spacetime vector p = p⁰ + p (grades 0 and 1). Components p^μ, μ = 0..3.
class Paravector {
public:
  constexpr Paravector() = default;
  constexpr Paravector(double p0, const Vec3 &p) : c_{p0, p.x, p.y, p.z} {}
  constexpr explicit Paravector(const std::array<double, 4> &c) : c_(c) {}

  /// Keeps the real paravector part ⟨x⟩_ℜ; other grades are discarded.
  static constexpr Paravector from_multivector(const Multivector &x) {
    return Paravector(std::array<double, 4>{x[0], x[1], x[2], x[3]});
  }
  static constexpr Paravector unit(int mu) {
    std::array<double, 4> c{};
    c[static_cast<std::size_t>(mu)] = 1.0;
    return Paravector(c);
  }

  constexpr double operator[](int mu) const { return c_[static_cast<std::size_t>(mu)]; }
  constexpr double time() const { return c_[0]; }
  constexpr Vec3 space() const { return {c_[1], c_[2], c_[3]}; }
  constexpr const std::array<double, 4> &components() const { return c_; }
  constexpr Multivector mv() const { return Multivector::paravector(c_[0], space()); }

  constexpr Paravector operator+(const Paravector &o) const {
    return Paravector(c_[0] + o.c_[0], space() + o.space());
  }
  constexpr Paravector operator-(const Paravector &o) const {
    return Paravector(c_[0] - o.c_[0], space() - o.space());
  }
  constexpr Paravector operator*(double s) const { return Paravector(c_[0] * s, space() * s); }
  friend constexpr Paravector operator*(double s, const Paravector &p) { return p * s; }
  constexpr bool operator==(const Paravector &) const = default;

private:
  std::array<double, 4> c_{};
};

/// Biparavector W = a + i b (real vector a, bivector i b). The field F = E + iB
/// and every generator of Lorentz rotors has this form.
struct Biparavector {
  Vec3 real; // vector part (E-like)
  Vec3 imag; // dual of the bivector part (B-like)

  static Biparavector from_multivector(const Multivector &x) {
    return {x.vector_part(), x.bivector_part()};
  }
  constexpr Multivector mv() const {
    return Multivector::vector(real) + Multivector::bivector(imag);
  }
  constexpr Biparavector operator*(double s) const { return {real * s, imag * s}; }
  constexpr Biparavector operator+(const Biparavector &o) const {
    return {real + o.real, imag + o.imag};
  }
};

/// Minkowski product ⟨p q̄⟩_S with signature (+,−,−,−).
inline double minkowski_dot(const Paravector &p, const Paravector &q) {
  return scalar_like(p.mv() * clifford_conj(q.mv())).real();
}

enum class Causal { Timelike, Spacelike, Null };

inline Causal classify(const Paravector &p, double eps = 1e-12) {
  const double scale = p.time() * p.time() + p.space().dot(p.space());
  const double q = minkowski_dot(p, p);
  if (std::fabs(q) <= eps * scale)
    return Causal::Null;
  return q > 0 ? Causal::Timelike : Causal::Spacelike;
}

namespace detail {

// cosh√w and sinh√w/√w for complex w, with Taylor fallback near w = 0.
inline std::pair<Complex, Complex> cosh_sinhc(Complex w) {
  if (std::abs(w) < 1e-8) {
    Complex c{1.0}, s{1.0}, term_c{1.0}, term_s{1.0};
    for (int k = 1; k < 5; ++k) {
      term_c *= w / static_cast<double>((2 * k - 1) * (2 * k));
      term_s *= w / static_cast<double>((2 * k) * (2 * k + 1));
      c += term_c;
      s += term_s;
    }
    return {c, s};
  }
  const Complex r = std::sqrt(w);
  return {std::cosh(r), std::sinh(r) / r};
}

} // namespace detail

/// Exponential of an arbitrary element x = α + a (complex scalar α, complex
/// vector a): e^α (cosh√(a·a) + a sinh√(a·a)/√(a·a)).
inline Multivector exponential(const Multivector &x) {
  const CVec3 a = x.complex_vector();
  const auto [ch, shc] = detail::cosh_sinhc(a.dot(a));
  const Complex ea = std::exp(x.complex_part());
  return Multivector::from_complex(ea * ch, a * (ea * shc));
}

/// Unimodular element L (L L̄ = 1): amplitude of a restricted Lorentz
/// transformation p → L p L†.
class LorentzRotor {
public:
  static constexpr double check_tolerance = 1e-9;

  constexpr LorentzRotor() : L_(Multivector::scalar(1.0)) {}

  static LorentzRotor checked(const Multivector &L, double tolerance = check_tolerance) {
    const double err = unimodularity_error(L);
    if (!(err <= tolerance))
      throw NotUnimodular("|L L̄ − 1| = " + std::to_string(err) + " exceeds " +
                          std::to_string(tolerance));
    return LorentzRotor(L);
  }
  static constexpr LorentzRotor unchecked(const Multivector &L) { return LorentzRotor(L); }

  static double unimodularity_error(const Multivector &L) {
    return std::abs(quadratic_form(L) - Complex{1.0});
  }

  constexpr const Multivector &mv() const { return L_; }
  double unimodularity_error() const { return unimodularity_error(L_); }

  LorentzRotor operator*(const LorentzRotor &o) const { return LorentzRotor(L_ * o.L_); }
  /// L̄ = L⁻¹ for unimodular L.
  constexpr LorentzRotor inverse() const { return LorentzRotor(clifford_conj(L_)); }

  bool is_unitary(double eps = 1e-10) const {
    return approx_equal(L_ * reversion(L_), Multivector::scalar(1.0), 0.0, eps);
  }
  bool is_hermitian(double eps = 1e-10) const {
    return approx_equal(L_, reversion(L_), 0.0, eps);
  }

private:
  constexpr explicit LorentzRotor(const Multivector &L) : L_(L) {}
  Multivector L_;
};

/// exp(W). Lorentz rotors are exp(W/2), so pass half the rotation generator.
inline LorentzRotor exp_biparavector(const Biparavector &W) {
  return LorentzRotor::unchecked(exponential(W.mv()));
}

/// Spatial rotor exp(−i n̂ φ/2): rotates vectors by φ in the right-handed
/// sense about n̂.
inline LorentzRotor rotor_about(const Vec3 &axis, double angle) {
  return exp_biparavector({{}, axis.normalized() * (-0.5 * angle)});
}

/// Rescale L to unimodular form: L / √(L L̄), principal root.
inline Multivector unimodular_projection(const Multivector &L) {
  return L * (1.0 / std::sqrt(quadratic_form(L)));
}

inline Multivector sandwich(const LorentzRotor &L, const Multivector &x) {
  return L.mv() * x * reversion(L.mv());
}

/// p → L p L†.
inline Paravector lorentz_transform(const LorentzRotor &L, const Paravector &p) {
  const double err = L.unimodularity_error();
  if (!(err <= LorentzRotor::check_tolerance))
    throw NotUnimodular("lorentz_transform: |L L̄ − 1| = " + std::to_string(err));
  return Paravector::from_multivector(sandwich(L, p.mv()));
}

struct PolarFactors {
  LorentzRotor boost;  // Hermitian
  LorentzRotor rotor;  // unitary
};

/// L = B R with B = (L L†)^{1/2} (principal, ⟨B⟩_S > 0) and R = B̄ L.
inline PolarFactors polar_decompose(const LorentzRotor &L) {
  const double err = L.unimodularity_error();
  if (!(err <= LorentzRotor::check_tolerance))
    throw NotUnimodular("polar_decompose: |L L̄ − 1| = " + std::to_string(err));
  // L L† is a unimodular future-pointing paravector q; its root is
  // (q + 1)/√(2(q⁰ + 1)).
  const Paravector q = Paravector::from_multivector(L.mv() * reversion(L.mv()));
  const Multivector B = (q.mv() + 1.0) / std::sqrt(2.0 * (q.time() + 1.0));
  const Multivector R = clifford_conj(B) * L.mv();
  return {LorentzRotor::unchecked(B), LorentzRotor::unchecked(R)};
}

/// B = √(p/m) = (p + m)/√(2m(E + m)); B e₀ B† = p/m.
inline LorentzRotor boost_from_momentum(const Paravector &p, double m) {
  const double E = p.time();
  if (!(m > 0.0))
    throw OffShell("boost_from_momentum: mass must be positive");
  if (!(E > p.space().norm()))
    throw NonTimelike("boost_from_momentum: E = " + std::to_string(E) +
                      " does not exceed |p| = " + std::to_string(p.space().norm()));
  const double shell = minkowski_dot(p, p);
  if (std::fabs(shell - m * m) > 1e-9 * m * m)
    throw OffShell("boost_from_momentum: p p̄ = " + std::to_string(shell) +
                   " differs from m² = " + std::to_string(m * m));
  return LorentzRotor::unchecked((p.mv() + m) / std::sqrt(2.0 * m * (E + m)));
}

/// Boost carrying the rest frame to velocity v (|v| < 1, c = 1).
inline LorentzRotor boost_from_velocity(const Vec3 &v) {
  const double v2 = v.dot(v);
  if (!(v2 < 1.0))
    throw NonTimelike("boost_from_velocity: |v| must be below 1");
  const double gamma = 1.0 / std::sqrt(1.0 - v2);
  const Paravector u(gamma, v * gamma);
  return LorentzRotor::unchecked((u.mv() + 1.0) / std::sqrt(2.0 * (gamma + 1.0)));
}

/// The tetrad u_μ = L e_μ L†.
inline std::array<Paravector, 4> tetrad(const LorentzRotor &L) {
  std::array<Paravector, 4> u;
  for (int mu = 0; mu < 4; ++mu)
    u[static_cast<std::size_t>(mu)] =
        Paravector::from_multivector(sandwich(L, Paravector::unit(mu).mv()));
  return u;
}

} // namespace aps
