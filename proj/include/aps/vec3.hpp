#pragma once

#include <cmath>

namespace aps {

// Plain Euclidean 3-vector used for parameters (fields, velocities, spin axes).
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static constexpr Vec3 unit(int k) {
    return {k == 0 ? 1.0 : 0.0, k == 1 ? 1.0 : 0.0, k == 2 ? 1.0 : 0.0};
  }

  constexpr double operator[](int k) const { return k == 0 ? x : (k == 1 ? y : z); }

  constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  friend constexpr Vec3 operator*(double s, const Vec3 &v) { return v * s; }

  constexpr double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3 &o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const { return *this / norm(); }
};

} // namespace aps
