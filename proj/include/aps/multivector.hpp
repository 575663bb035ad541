#pragma once

#include <aps/error.hpp>
#include <aps/vec3.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

namespace aps {

using Complex = std::complex<double>;

namespace tol {
inline constexpr double rel = 1e-12;
inline constexpr double abs = 1e-14;
// |x x̄| below this fraction of ‖x‖² marks a null (non-invertible) element.
inline constexpr double null_fraction = 1e-12;
} // namespace tol

// Complex 3-vector: a + i b with a the vector part and b the dual of the
// bivector part. Only used internally for products.
struct CVec3 {
  Complex x, y, z;

  CVec3 operator+(const CVec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
  CVec3 operator-(const CVec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
  CVec3 operator*(Complex s) const { return {x * s, y * s, z * s}; }
  Complex dot(const CVec3 &o) const { return x * o.x + y * o.y + z * o.z; }
  CVec3 cross(const CVec3 &o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
};

/// Element of the Clifford algebra of physical space.
///
/// Coefficients are stored over the blades {1, e1, e2, e3, e23, e31, e12, e123}.
/// With i = e123 the bivectors are e23 = i e1, e31 = i e2, e12 = i e3, so slot
/// k+4 is the dual partner of slot k and every element is a complex scalar
/// plus a complex vector.
class Multivector {
public:
  enum Blade : std::size_t { S = 0, E1, E2, E3, E23, E31, E12, E123 };
  static constexpr std::size_t size = 8;

  constexpr Multivector() = default;
  constexpr explicit Multivector(const std::array<double, 8> &coeffs) : c_(coeffs) {}

  static constexpr Multivector blade(std::size_t k, double value = 1.0) {
    Multivector m;
    m.c_[k] = value;
    return m;
  }
  static constexpr Multivector scalar(double s) { return blade(S, s); }
  static constexpr Multivector pseudoscalar(double s) { return blade(E123, s); }
  static constexpr Multivector vector(const Vec3 &v) {
    return Multivector({0, v.x, v.y, v.z, 0, 0, 0, 0});
  }
  /// i v: the bivector whose plane is orthogonal to v.
  static constexpr Multivector bivector(const Vec3 &v) {
    return Multivector({0, 0, 0, 0, v.x, v.y, v.z, 0});
  }
  static constexpr Multivector paravector(double p0, const Vec3 &p) {
    return Multivector({p0, p.x, p.y, p.z, 0, 0, 0, 0});
  }
  static Multivector complex_scalar(Complex z) {
    return Multivector({z.real(), 0, 0, 0, 0, 0, 0, z.imag()});
  }
  static Multivector from_complex(Complex alpha, const CVec3 &a) {
    return Multivector({alpha.real(), a.x.real(), a.y.real(), a.z.real(), a.x.imag(),
                        a.y.imag(), a.z.imag(), alpha.imag()});
  }

  constexpr double operator[](std::size_t k) const { return c_[k]; }
  constexpr double &operator[](std::size_t k) { return c_[k]; }
  constexpr const std::array<double, 8> &coefficients() const { return c_; }

  /// Scalar + pseudoscalar channel as a complex number.
  Complex complex_part() const { return {c_[S], c_[E123]}; }
  CVec3 complex_vector() const {
    return {{c_[E1], c_[E23]}, {c_[E2], c_[E31]}, {c_[E3], c_[E12]}};
  }
  constexpr Vec3 vector_part() const { return {c_[E1], c_[E2], c_[E3]}; }
  /// Dual vector b of the bivector part i b.
  constexpr Vec3 bivector_part() const { return {c_[E23], c_[E31], c_[E12]}; }

  constexpr Multivector operator+(const Multivector &o) const {
    Multivector r;
    for (std::size_t k = 0; k < size; ++k)
      r.c_[k] = c_[k] + o.c_[k];
    return r;
  }
  constexpr Multivector operator-(const Multivector &o) const {
    Multivector r;
    for (std::size_t k = 0; k < size; ++k)
      r.c_[k] = c_[k] - o.c_[k];
    return r;
  }
  constexpr Multivector operator-() const {
    Multivector r;
    for (std::size_t k = 0; k < size; ++k)
      r.c_[k] = -c_[k];
    return r;
  }
  constexpr Multivector operator*(double s) const {
    Multivector r;
    for (std::size_t k = 0; k < size; ++k)
      r.c_[k] = c_[k] * s;
    return r;
  }
  constexpr Multivector operator/(double s) const { return *this * (1.0 / s); }
  friend constexpr Multivector operator*(double s, const Multivector &m) { return m * s; }

  Multivector operator+(double s) const { return *this + scalar(s); }
  Multivector operator-(double s) const { return *this - scalar(s); }
  friend Multivector operator+(double s, const Multivector &m) { return m + s; }
  friend Multivector operator-(double s, const Multivector &m) { return scalar(s) - m; }

  /// Geometric product.
  Multivector operator*(const Multivector &o) const {
    const Complex alpha = complex_part();
    const Complex beta = o.complex_part();
    const CVec3 a = complex_vector();
    const CVec3 b = o.complex_vector();
    const Complex I{0.0, 1.0};
    return from_complex(alpha * beta + a.dot(b), b * alpha + a * beta + a.cross(b) * I);
  }

  /// Multiplication by a central complex scalar x + y i.
  Multivector operator*(Complex z) const {
    return from_complex(complex_part() * z, complex_vector() * z);
  }
  friend Multivector operator*(Complex z, const Multivector &m) { return m * z; }

  Multivector &operator+=(const Multivector &o) { return *this = *this + o; }
  Multivector &operator-=(const Multivector &o) { return *this = *this - o; }
  Multivector &operator*=(double s) { return *this = *this * s; }

  // Bit-exact comparison; numerical code should use approx_equal.
  constexpr bool operator==(const Multivector &) const = default;

  /// Euclidean norm of the coefficient array.
  double norm() const {
    double s = 0.0;
    for (double v : c_)
      s += v * v;
    return std::sqrt(s);
  }
  double max_abs() const {
    double m = 0.0;
    for (double v : c_)
      m = std::fmax(m, std::fabs(v));
    return m;
  }

private:
  std::array<double, 8> c_{};
};

namespace basis {
inline constexpr Multivector one = Multivector::blade(Multivector::S);
inline constexpr Multivector e1 = Multivector::blade(Multivector::E1);
inline constexpr Multivector e2 = Multivector::blade(Multivector::E2);
inline constexpr Multivector e3 = Multivector::blade(Multivector::E3);
inline constexpr Multivector e23 = Multivector::blade(Multivector::E23);
inline constexpr Multivector e31 = Multivector::blade(Multivector::E31);
inline constexpr Multivector e12 = Multivector::blade(Multivector::E12);
inline constexpr Multivector I = Multivector::blade(Multivector::E123);
} // namespace basis

inline Multivector gp(const Multivector &a, const Multivector &b) { return a * b; }

/// a†: reverses vector order; Hermitian conjugation in the Pauli representation.
constexpr Multivector reversion(const Multivector &a) {
  Multivector r = a;
  for (std::size_t k = Multivector::E23; k <= Multivector::E123; ++k)
    r[k] = -r[k];
  return r;
}

/// ā: negates grades 1 and 2, so p̄ = p⁰ − p on paravectors.
constexpr Multivector clifford_conj(const Multivector &a) {
  Multivector r = a;
  for (std::size_t k = Multivector::E1; k <= Multivector::E12; ++k)
    r[k] = -r[k];
  return r;
}

/// Bar-dagger composition: negates the odd grades.
constexpr Multivector grade_involution(const Multivector &a) {
  return clifford_conj(reversion(a));
}

/// Projection onto vector grade k (0..3).
constexpr Multivector grade(const Multivector &a, int k) {
  Multivector r;
  switch (k) {
  case 0:
    r[Multivector::S] = a[Multivector::S];
    break;
  case 1:
    for (std::size_t j = Multivector::E1; j <= Multivector::E3; ++j)
      r[j] = a[j];
    break;
  case 2:
    for (std::size_t j = Multivector::E23; j <= Multivector::E12; ++j)
      r[j] = a[j];
    break;
  case 3:
    r[Multivector::E123] = a[Multivector::E123];
    break;
  default:
    break;
  }
  return r;
}

enum class Part { Scalar, Vector, Real, Imag, Even, Odd };

/// The ⟨·⟩_S, ⟨·⟩_V, ⟨·⟩_ℜ, ⟨·⟩_ℑ maps plus the even/odd split ⟨·⟩±.
constexpr Multivector parts(const Multivector &a, Part which) {
  switch (which) {
  case Part::Scalar:
    return (a + clifford_conj(a)) * 0.5;
  case Part::Vector:
    return (a - clifford_conj(a)) * 0.5;
  case Part::Real:
    return (a + reversion(a)) * 0.5;
  case Part::Imag:
    return (a - reversion(a)) * 0.5;
  case Part::Even:
    return (a + grade_involution(a)) * 0.5;
  case Part::Odd:
    return (a - grade_involution(a)) * 0.5;
  }
  return a;
}

/// ⟨a⟩_S as a complex number (scalar + pseudoscalar channel).
inline Complex scalar_like(const Multivector &a) { return a.complex_part(); }

/// x x̄, always a complex scalar; equals det of the matrix representation.
inline Complex quadratic_form(const Multivector &a) {
  const CVec3 v = a.complex_vector();
  const Complex alpha = a.complex_part();
  return alpha * alpha - v.dot(v);
}

inline bool is_null(const Multivector &a) {
  const double n = a.norm();
  return std::abs(quadratic_form(a)) < tol::null_fraction * n * n || n == 0.0;
}

/// x⁻¹ = x̄ (x x̄)⁻¹.
inline Multivector inverse(const Multivector &a) {
  if (is_null(a))
    throw NonInvertible("element has vanishing quadratic form (null or projector-like)");
  return clifford_conj(a) * (1.0 / quadratic_form(a));
}

/// Clifford-Hodge dual *x = −i x; swaps slot pairs (k, k+4) with a sign.
inline Multivector dual(const Multivector &a) { return a * Complex{0.0, -1.0}; }

inline Multivector exp_complex_scalar(Complex z) {
  return Multivector::complex_scalar(std::exp(z));
}

inline double max_abs_diff(const Multivector &a, const Multivector &b) {
  return (a - b).max_abs();
}

/// ‖a − b‖ ≤ rel·max(‖a‖, ‖b‖) + abs, on the coefficient norm.
inline bool approx_equal(const Multivector &a, const Multivector &b, double rel = tol::rel,
                         double abs = tol::abs) {
  const double scale = std::fmax(a.norm(), b.norm());
  return (a - b).norm() <= rel * scale + abs;
}

inline std::string to_string(const Multivector &a) {
  static const char *names[] = {"", "e1", "e2", "e3", "e23", "e31", "e12", "e123"};
  std::string out;
  for (std::size_t k = 0; k < Multivector::size; ++k) {
    if (a[k] == 0.0)
      continue;
    if (!out.empty())
      out += a[k] < 0 ? " - " : " + ";
    else if (a[k] < 0)
      out += "-";
    out += std::to_string(std::fabs(a[k]));
    out += names[k];
  }
  return out.empty() ? "0" : out;
}

} // namespace aps
