#pragma once

#include <aps/multivector.hpp>

#include <array>
#include <cmath>
#include <complex>

namespace aps {

/// 2×2 complex matrix, row-major. The standard (Pauli) representation of the
/// algebra and the independent oracle every product law is checked against.
struct MatrixRep {
  std::array<Complex, 4> m{};

  Complex &operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
  Complex operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

  static MatrixRep identity() { return {{Complex{1}, Complex{0}, Complex{0}, Complex{1}}}; }

  MatrixRep operator*(const MatrixRep &o) const {
    MatrixRep r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j);
    return r;
  }
  MatrixRep operator+(const MatrixRep &o) const {
    MatrixRep r;
    for (std::size_t k = 0; k < 4; ++k)
      r.m[k] = m[k] + o.m[k];
    return r;
  }
  MatrixRep operator-(const MatrixRep &o) const {
    MatrixRep r;
    for (std::size_t k = 0; k < 4; ++k)
      r.m[k] = m[k] - o.m[k];
    return r;
  }
  MatrixRep operator*(Complex s) const {
    MatrixRep r;
    for (std::size_t k = 0; k < 4; ++k)
      r.m[k] = m[k] * s;
    return r;
  }

  MatrixRep adjoint() const {
    return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
  }
  Complex det() const { return m[0] * m[3] - m[1] * m[2]; }
  Complex trace() const { return m[0] + m[3]; }
  MatrixRep inverse() const {
    const Complex d = det();
    return MatrixRep{{m[3], -m[1], -m[2], m[0]}} * (1.0 / d);
  }

  double frobenius() const {
    double s = 0.0;
    for (const auto &z : m)
      s += std::norm(z);
    return std::sqrt(s);
  }
};

inline MatrixRep to_rep(const Multivector &a) {
  const Complex alpha = a.complex_part();
  const CVec3 v = a.complex_vector();
  const Complex I{0.0, 1.0};
  return {{alpha + v.z, v.x - I * v.y, v.x + I * v.y, alpha - v.z}};
}

inline Multivector from_rep(const MatrixRep &r) {
  const Complex I{0.0, 1.0};
  const Complex alpha = 0.5 * (r(0, 0) + r(1, 1));
  const CVec3 v{0.5 * (r(0, 1) + r(1, 0)), 0.5 * (r(1, 0) - r(0, 1)) / I,
                0.5 * (r(0, 0) - r(1, 1))};
  return Multivector::from_complex(alpha, v);
}

/// Frobenius distance relative to the larger operand, with an absolute floor.
inline double rel_error(const MatrixRep &a, const MatrixRep &b, double floor = tol::abs) {
  const double scale = std::fmax(a.frobenius(), b.frobenius());
  return (a - b).frobenius() / std::fmax(scale, floor);
}

} // namespace aps
