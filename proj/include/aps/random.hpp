#pragma once

#include <aps/multivector.hpp>
#include <aps/spacetime.hpp>

#include <cmath>
#include <array>
#include <cstdint>
#include <numbers>
#include <random>

namespace aps {

/// SplitMix64 step; used to derive independent per-stream seeds from one
/// 64-bit master seed.
constexpr std::uint64_t splitmix64(std::uint64_t &state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seeded generator (mt19937_64) for stream `stream` of master seed `seed`.
/// Streams with different ids are statistically independent.
class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ull * (stream + 1));
    engine_.seed(splitmix64(s));
  }

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  Multivector multivector(double scale = 1.0) {
    std::array<double, 8> c{};
    for (auto &x : c)
      x = uniform(-scale, scale);
    return Multivector(c);
  }
  Vec3 vec3(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)}; }
  Vec3 unit_vector() {
    Vec3 v{normal(), normal(), normal()};
    while (v.norm() < 1e-8)
      v = {normal(), normal(), normal()};
    return v.normalized();
  }
  /// Random restricted Lorentz rotor exp(W/2) with bounded rapidity.
  LorentzRotor lorentz_rotor(double max_rapidity = 1.0) {
    return exp_biparavector(Biparavector{vec3(max_rapidity / 2.0), vec3(std::numbers::pi / 2.0)});
  }
  /// Random on-shell momentum with |p| ≤ max_p for mass m.
  Paravector on_shell_momentum(double m, double max_p = 2.0) {
    const Vec3 p = unit_vector() * uniform(0.0, max_p);
    return {std::sqrt(m * m + p.dot(p)), p};
  }

  std::mt19937_64 &engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

} // namespace aps
