#include "oracles.hpp"

#include <aps/dirac.hpp>
#include <aps/random.hpp>

#include <gtest/gtest.h>

#include <numbers>

using namespace aps;

namespace {

double max_abs(const std::array<Complex, 4> &v) {
  double m = 0.0;
  for (const auto &z : v)
    m = std::fmax(m, std::abs(z));
  return m;
}

Multivector random_amplitude(RandomStream &rng, double &rho, Paravector &p, double m) {
  rho = rng.uniform(0.2, 2.0);
  p = rng.on_shell_momentum(m, 1.5);
  const LorentzRotor R = euler_rotor(rng.uniform(-3, 3), rng.uniform(0, 3), rng.uniform(-3, 3));
  return boost_from_momentum(p, m).mv() * R.mv() * std::sqrt(rho);
}

} // namespace

TEST(Currents, ProperVelocityAndSpin) {
  RandomStream rng(21);
  for (int k = 0; k < 30; ++k) {
    double rho;
    Paravector p;
    const double m = 1.3;
    const Multivector Psi = random_amplitude(rng, rho, p, m);
    const Paravector J = current(Psi), S = spin_current(Psi);
    EXPECT_LT((J - p * (rho / m)).mv().norm(), 1e-12);
    EXPECT_NEAR(minkowski_dot(J, S), 0.0, 1e-12);
    EXPECT_NEAR(minkowski_dot(S, S), -rho * rho, 1e-12);
    EXPECT_NEAR(minkowski_dot(chiral_current(Psi, +1), chiral_current(Psi, +1)), 0.0, 1e-12);
    EXPECT_NEAR(minkowski_dot(chiral_current(Psi, -1), chiral_current(Psi, -1)), 0.0, 1e-12);
  }
}

TEST(ClassicalDirac, HoldsForBoostedRotor) {
  RandomStream rng(22);
  for (int k = 0; k < 30; ++k) {
    double rho;
    Paravector p;
    const double m = 0.8;
    const Multivector Psi = random_amplitude(rng, rho, p, m);
    EXPECT_LT(classical_dirac_residual(Psi, p, m).norm(), 1e-12);
    EXPECT_GT(classical_dirac_residual(Psi, p * 1.1, m).norm(), 1e-3);
    EXPECT_LT(dirac2_residual(Psi, p, m).norm(), 1e-12);
  }
}

TEST(ClassicalDirac, CommutatorIdentity) {
  RandomStream rng(23);
  for (int k = 0; k < 30; ++k)
    EXPECT_LT(commutator_identity_residual(rng.uniform(0.1, 3), rng.lorentz_rotor(1.5)).norm(), 1e-12);
}

TEST(Gamma, CliffordRelations) {
  const auto g = gamma_weyl();
  const double eta[4] = {1, -1, -1, -1};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const Matrix4 ab = g[a] * g[b], ba = g[b] * g[a];
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
          const Complex expected = (a == b && i == j) ? 2.0 * eta[a] : 0.0;
          EXPECT_LT(std::abs(ab[i][j] + ba[i][j] - expected), 1e-15);
        }
    }
  const Matrix4 g5 = gamma5_weyl();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex expected = i == j ? (i < 2 ? 1.0 : -1.0) : 0.0;
      EXPECT_LT(std::abs(g5[i][j] - expected), 1e-15);
    }
}

TEST(Bispinor, RepresentationsAgree) {
  RandomStream rng(24);
  for (int k = 0; k < 20; ++k) {
    const Multivector Psi = rng.multivector();
    const Bispinor w = to_bispinor(Psi, BispinorRep::Weyl);
    const Bispinor d = to_bispinor(Psi, BispinorRep::DiracPauli);
    const Bispinor w2d = convert(w, BispinorRep::DiracPauli);
    const Bispinor back = convert(w2d, BispinorRep::Weyl);
    for (std::size_t c = 0; c < 4; ++c) {
      EXPECT_LT(std::abs(w2d[c] - d[c]), 1e-14);
      EXPECT_LT(std::abs(back[c] - w[c]), 1e-14);
    }
    EXPECT_NEAR(std::abs(hermitian_product(w, w) - hermitian_product(d, d)), 0.0, 1e-13);
  }
}

TEST(Bispinor, ChiralProjectionPicksIdealParts) {
  RandomStream rng(25);
  const Multivector Psi = rng.multivector();
  const Bispinor w = to_bispinor(Psi);
  const Bispinor plus = chiral_projection(w, +1), minus = chiral_projection(w, -1);
  const auto up = IdealSpinor::project(Psi).column();
  const auto low = IdealSpinor::project(grade_involution(Psi)).column();
  const double s = 1.0 / std::numbers::sqrt2;
  for (std::size_t c = 0; c < 2; ++c) {
    EXPECT_LT(std::abs(plus[c] - up[c] * s), 1e-15);
    EXPECT_LT(std::abs(plus[c + 2]), 1e-15);
    EXPECT_LT(std::abs(minus[c]), 1e-15);
    EXPECT_LT(std::abs(minus[c + 2] - low[c] * s), 1e-15);
  }
  // a Dirac-Pauli input is converted first
  const Bispinor viaDP = chiral_projection(to_bispinor(Psi, BispinorRep::DiracPauli), +1);
  EXPECT_LT(std::abs(viaDP[0] - plus[0]), 1e-14);
}

TEST(Bispinor, DiracEquationInMatrixForm) {
  RandomStream rng(26);
  for (int k = 0; k < 20; ++k) {
    const double m = 1.0;
    const PlaneWave wave = PlaneWave::on_shell(rng.vec3(0.8), m, rng.lorentz_rotor(0.0), 0.6);
    const Multivector Psi = wave(Paravector(rng.uniform(), rng.vec3()));
    EXPECT_LT(max_abs(dirac_momentum_residual(to_bispinor(Psi), wave.p, m)), 1e-13);
    EXPECT_LT(max_abs(dirac_momentum_residual(to_bispinor(Psi, BispinorRep::DiracPauli), wave.p, m)),
              1e-13);
    Paravector wrong = wave.p;
    wrong = wrong + Paravector(0.0, {0.1, 0, 0});
    EXPECT_GT(max_abs(dirac_momentum_residual(to_bispinor(Psi), wrong, m)), 1e-3);
  }
}

TEST(LargeSmall, SplitRecombines) {
  RandomStream rng(27);
  const Multivector Psi = rng.multivector();
  const LargeSmall ls = large_small_split(Psi);
  EXPECT_TRUE(approx_equal(ls.large + ls.small, Psi, 1e-15, 1e-15));
  EXPECT_TRUE(approx_equal(grade_involution(ls.large), ls.large, 1e-15, 1e-15));
  EXPECT_TRUE(approx_equal(grade_involution(ls.small), -ls.small, 1e-15, 1e-15));
}

TEST(DeBroglie, WavelengthIsTwoPiOverMomentum) {
  for (const auto &[m, v] : {std::pair{1.0, 0.3}, std::pair{2.0, 0.05}, std::pair{0.5, 0.9}}) {
    const Particle p = Particle::make(1.0, m);
    const Vec3 vel{v * 0.6, 0.0, v * 0.8};
    const double gamma = 1.0 / std::sqrt(1.0 - v * v);
    const double expected = 2.0 * std::numbers::pi / (gamma * m * v);
    EXPECT_NEAR(debroglie_wavelength(p, vel) / expected, 1.0, 1e-9);
  }
}

TEST(DeBroglie, PhaseAndWaveAgree) {
  const Particle p = Particle::make(1.0, 1.5);
  const Vec3 v{0.2, -0.1, 0.3};
  const Paravector x(0.7, {0.1, 0.4, -0.3});
  const Complex ph = debroglie_phase(p, v, x);
  const auto col = IdealSpinor::project(debroglie_wave(p, v, x)).column();
  EXPECT_LT(std::abs(col[0] - ph), 1e-14);
  EXPECT_LT(std::abs(col[1]), 1e-14);
  EXPECT_THROW(debroglie_phase(p, {0.8, 0.8, 0}, x), SuperluminalVelocity);
  EXPECT_THROW(debroglie_wavelength(p, {}), Error);
}

TEST(PlaneWave, MomentumOperatorEigenvalue) {
  RandomStream rng(28);
  std::vector<PlaneWave> waves;
  for (int k = 0; k < 3; ++k) {
    PlaneWave w = PlaneWave::on_shell(rng.vec3(0.7), 1.0, rng.lorentz_rotor(0.5), 0.5);
    w.A = Paravector(0.2, {0.1, -0.3, 0.05});
    w.charge = -1.0;
    waves.push_back(w);
  }
  const Paravector x(0.3, {0.2, -0.1, 0.4});
  const WaveSuperposition single({waves[0]});
  const WaveSuperposition many(waves);
  for (int mu = 0; mu < 4; ++mu) {
    EXPECT_LT(momentum_operator_residual(single, x, mu, 1e-4).norm(), 1e-7) << mu;
    EXPECT_LT(momentum_operator_residual(many, x, mu, 1e-4).norm(), 1e-7) << mu;
  }
}

TEST(PlaneWave, SuperpositionLimit) {
  std::vector<PlaneWave> waves(kMaxWaves + 1, PlaneWave::on_shell({}, 1.0));
  EXPECT_THROW(WaveSuperposition{waves}, Error);
  waves.pop_back();
  EXPECT_NO_THROW(WaveSuperposition{waves});
}

TEST(Conservation, ChargeCurrentForAnySuperposition) {
  RandomStream rng(29);
  std::vector<PlaneWave> waves;
  // rotation-only frames: a boost in R would move the wave off its momentum shell
  for (int k = 0; k < 4; ++k)
    waves.push_back(PlaneWave::on_shell(rng.vec3(0.8), 1.0, rng.lorentz_rotor(0.0), 0.5));
  const WaveSuperposition psi(waves);
  for (int k = 0; k < 5; ++k) {
    const Paravector x(rng.uniform(), rng.vec3());
    const CurrentDivergence d = conserved_currents(psi, x, 1e-4);
    EXPECT_LT(std::fabs(d.J), 1e-7);
    // the spin current's source is fixed by the scalar ΨΨ̄
    const Multivector P = psi(x);
    const double source = -2.0 * scalar_like(P * clifford_conj(P)).imag();
    EXPECT_NEAR(d.S, source, 1e-7);
  }
}

TEST(Conservation, AllCurrentsWhenPsiPsiBarIsReal) {
  const WaveSuperposition psi({PlaneWave::on_shell({0.3, 0.1, 0.0}, 1.0, {}, 0.7),
                               PlaneWave::on_shell({-0.4, 0.6, 0.0}, 1.0, {}, 0.7)});
  RandomStream rng(30);
  for (int k = 0; k < 5; ++k) {
    const Paravector x(rng.uniform(), rng.vec3(2.0));
    const CurrentDivergence d = conserved_currents(psi, x, 1e-4);
    EXPECT_LT(std::fabs(d.J), 1e-7);
    EXPECT_LT(std::fabs(d.S), 1e-7);
    EXPECT_LT(std::fabs(d.plus), 1e-7);
    EXPECT_LT(std::fabs(d.minus), 1e-7);
    EXPECT_LT(std::fabs(scalar_like(psi(x) * clifford_conj(psi(x))).imag()), 1e-14);
  }
}

TEST(PauliLimit, GapScalesAsFourthPower) {
  const double m = 1.0, V = 0.3;
  for (double q : {0.01, 0.02, 0.05}) {
    const Vec3 p{q * 0.6, 0.0, q * 0.8};
    const PlaneWave w = PlaneWave::on_shell(p, m, euler_rotor(0.3, 0.7, 0.1));
    const Multivector Psi = w(Paravector(0.2, {0.1, 0.0, 0.3}));
    const double H = w.p.time() + V;
    const PauliSchrodinger r = pauli_schrodinger_limit(Psi, p, H, V, m);
    const double X = (parts(Psi, Part::Even) * basis::P3).norm();
    EXPECT_LT(r.exact_residual, 1e-14);
    EXPECT_NEAR(r.gap / X, std::pow(q, 4) / (8 * m * m * m), 0.02 * std::pow(q, 4));
    EXPECT_NEAR(r.approx_residual, r.gap, 1e-15);
    EXPECT_TRUE(r.warnings.empty());
  }
  const PauliSchrodinger fast =
      pauli_schrodinger_limit(Multivector::scalar(1.0), {0.5, 0, 0}, std::sqrt(1.25), 0.0, 1.0);
  EXPECT_FALSE(fast.warnings.empty());
}
