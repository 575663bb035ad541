#include <aps/random.hpp>
#include <aps/stern_gerlach.hpp>

#include <gtest/gtest.h>

#include <numbers>

using namespace aps;

namespace {

double pdiff(const Paravector &a, const Paravector &b) { return (a - b).mv().norm(); }

} // namespace

TEST(SGConfig, Validation) {
  SGConfig c;
  EXPECT_TRUE(validate(c).empty());
  auto bad = [](auto mutate) {
    SGConfig x;
    mutate(x);
    return x;
  };
  EXPECT_THROW(validate(bad([](SGConfig &x) { x.v = 0.0; })), ConfigOutOfRange);
  EXPECT_THROW(validate(bad([](SGConfig &x) { x.v = 1.0; })), ConfigOutOfRange);
  EXPECT_THROW(validate(bad([](SGConfig &x) { x.dv = -0.1; })), ConfigOutOfRange);
  EXPECT_THROW(validate(bad([](SGConfig &x) { x.sigma = 0.0; })), ConfigOutOfRange);
  EXPECT_THROW(validate(bad([](SGConfig &x) { x.phi = 0.2; })), ConfigOutOfRange);
  EXPECT_THROW(validate(bad([](SGConfig &x) { x.points = 2; })), ConfigOutOfRange);
  EXPECT_THROW(validate(bad([](SGConfig &x) { x.z_min = 1; x.z_max = -1; })), ConfigOutOfRange);
  EXPECT_EQ(validate(bad([](SGConfig &x) { x.v = 0.5; x.dv = 0.2; })).size(), 2u);
}

TEST(SplitState, BranchWeightsAndEigenstates) {
  SGConfig c;
  c.theta = 1.1;
  c.chi = 0.4;
  const SplitState s = split_state(c);
  EXPECT_NEAR(s.w_up, std::pow(std::cos(0.55), 2), 1e-15);
  EXPECT_NEAR(s.w_up + s.w_down, 1.0, 1e-15);
  EXPECT_TRUE(approx_equal(basis::e3 * s.up * basis::P3, s.up * basis::P3, 1e-14, 1e-14));
  EXPECT_TRUE(approx_equal(basis::e3 * s.down * basis::P3, -(s.down * basis::P3), 1e-14, 1e-14));
  // without the boosts the state is the rotor itself
  EXPECT_TRUE(approx_equal(s.amplitude(1.0, 1.0, 0.0) * basis::P3,
                           euler_rotor(0, c.theta, c.chi).mv() * basis::P3, 1e-14, 1e-14));
}

TEST(Currents, ClosedFormIsTheLinearPart) {
  RandomStream rng(41);
  for (int k = 0; k < 50; ++k) {
    SGConfig c;
    c.theta = rng.uniform(0.0, std::numbers::pi);
    c.chi = rng.uniform(-3, 3);
    c.v = rng.uniform(0.001, 0.1);
    c.dv = rng.uniform(0.0001, 0.05);
    const double rp = rng.uniform(0, 1), rm = rng.uniform(0, 1);
    const SplitState s = split_state(c);
    const BeamCurrents lin = linearized_currents(s, rp, rm);
    const BeamCurrents cf = closed_form_currents(c.theta, c.v, c.dv, rp, rm);
    EXPECT_LT(pdiff(lin.J, cf.J), 1e-13);
    EXPECT_LT(pdiff(lin.S, cf.S), 1e-13);
    // the exact product differs only at second order
    const BeamCurrents ex = direct_currents(s, rp, rm);
    const double second = (c.v * c.v + c.dv * c.dv) * (rp + rm);
    EXPECT_LT(pdiff(ex.J, cf.J), second);
    EXPECT_LT(pdiff(ex.S, cf.S), second);
  }
}

TEST(Currents, PureUpBeamMovesWithVPlus) {
  const BeamCurrents c = closed_form_currents(0.0, 0.02, 0.003, 0.7, 0.4);
  EXPECT_LT(pdiff(c.J, Paravector(0.7, {0.014, 0.0, 0.0021})), 1e-15);
  EXPECT_LT(pdiff(c.S, Paravector(0.0021, {0.0, 0.0, 0.7})), 1e-15);
}

TEST(Profiles, NormalizationAndOverlap) {
  SGConfig c;
  c.theta = std::numbers::pi / 2;
  for (double t : {0.0, 1000.0, 3000.0}) {
    const BeamProfile p = profiles(c, t);
    EXPECT_NEAR(p.total, 1.0, 1e-9);
    EXPECT_NEAR(p.overlap, gaussian_overlap(2 * c.dv * t, c.sigma), 1e-9);
    for (const auto &pt : {p.points.front(), p.points[p.points.size() / 3], p.points.back()})
      EXPECT_NEAR(pt.rho, pt.J[0], 1e-14);
  }
}

TEST(Profiles, ModesAgreeToFirstOrder) {
  SGConfig c;
  c.theta = 0.9;
  c.points = 101;
  const BeamProfile cf = profiles(c, 500.0, ProfileMode::ClosedForm);
  const BeamProfile lin = profiles(c, 500.0, ProfileMode::Linearized);
  const BeamProfile dir = profiles(c, 500.0, ProfileMode::Direct);
  for (std::size_t k = 0; k < cf.points.size(); ++k) {
    EXPECT_LT(pdiff(cf.points[k].J, lin.points[k].J), 1e-14);
    EXPECT_LT(pdiff(cf.points[k].S, dir.points[k].S), 1e-4);
  }
}

TEST(Profiles, ExplicitRange) {
  SGConfig c;
  c.z_min = -2;
  c.z_max = 4;
  c.points = 7;
  const BeamProfile p = profiles(c, 0.0);
  EXPECT_DOUBLE_EQ(p.points.front().z, -2.0);
  EXPECT_DOUBLE_EQ(p.points.back().z, 4.0);
  EXPECT_DOUBLE_EQ(p.dz, 1.0);
}

TEST(Outcomes, ProbabilitiesFollowTheRotor) {
  for (double theta : {0.3, std::numbers::pi / 2, 2.5}) {
    SGConfig c;
    c.theta = theta;
    const double t = 6.0 * c.sigma / c.dv; // 12σ apart
    const Outcomes o = measure_outcomes(c, t);
    EXPECT_NEAR(o.p_up, std::pow(std::cos(theta / 2), 2), 1e-6);
    EXPECT_NEAR(o.p_down, std::pow(std::sin(theta / 2), 2), 1e-6);
    EXPECT_NEAR(o.separation, 12.0, 1e-12);
    EXPECT_TRUE(o.warnings.empty());
    const Outcomes back = measure_outcomes(c, -t);
    EXPECT_NEAR(back.p_up, o.p_up, 1e-12);
  }
}

TEST(Outcomes, OverlappingBranchesWarn) {
  SGConfig c;
  c.theta = 1.0;
  const Outcomes o = measure_outcomes(c, 1000.0);
  ASSERT_FALSE(o.warnings.empty());
  EXPECT_NE(o.warnings.back().find("Overlapping"), std::string::npos);
  EXPECT_NEAR(o.overlap, gaussian_overlap(2.0, 1.0), 1e-9);
  EXPECT_NEAR(o.p_up + o.p_down, 1.0, 1e-9);
}

TEST(Outcomes, EvenPointCountAndAsymmetricRange) {
  SGConfig c;
  c.theta = 1.0;
  c.points = 4000;
  c.z_min = -30;
  c.z_max = 20;
  const Outcomes o = measure_outcomes(c, 6000.0);
  EXPECT_NEAR(o.p_up, std::pow(std::cos(0.5), 2), 1e-6);
}
