#include "oracles.hpp"

#include <aps/identity_checks.hpp>
#include <aps/multivector.hpp>
#include <aps/random.hpp>
#include <aps/spacetime.hpp>

#include <gtest/gtest.h>

#include <numbers>

using namespace aps;
using namespace aps::basis;

namespace {

bool same(const Multivector &a, const Multivector &b, double eps = 1e-14) {
  return approx_equal(a, b, 0.0, eps);
}

} // namespace

TEST(Multivector, BasisVectorsSquareToOne) {
  EXPECT_EQ(e1 * e1, one);
  EXPECT_EQ(e2 * e2, one);
  EXPECT_EQ(e3 * e3, one);
  EXPECT_EQ(e1 * e2, -(e2 * e1));
}

TEST(Multivector, PseudoscalarIsCentralAndSquaresToMinusOne) {
  EXPECT_EQ(I * I, -one);
  EXPECT_EQ(e1 * e2 * e3, I);
  for (const auto &b : {e1, e2, e3, e23, e31, e12})
    EXPECT_EQ(I * b, b * I);
}

TEST(Multivector, BivectorsAreDualsOfVectors) {
  EXPECT_EQ(e2 * e3, e23);
  EXPECT_EQ(e3 * e1, e31);
  EXPECT_EQ(e1 * e2, e12);
  EXPECT_EQ(I * e1, e23);
  EXPECT_EQ(I * e2, e31);
  EXPECT_EQ(I * e3, e12);
}

TEST(Multivector, ProductMatchesMatrixProduct) {
  RandomStream rng(1);
  for (int t = 0; t < 2000; ++t) {
    const Multivector a = rng.multivector(), b = rng.multivector();
    EXPECT_LT(oracle::rel_diff(oracle::mat(a * b), oracle::mat(a) * oracle::mat(b)), 1e-14);
  }
}

TEST(Multivector, MatrixRoundTrip) {
  RandomStream rng(2);
  for (int t = 0; t < 200; ++t) {
    const Multivector a = rng.multivector();
    EXPECT_TRUE(same(from_rep(to_rep(a)), a));
  }
}

TEST(Multivector, ProductIsAssociative) {
  RandomStream rng(3);
  for (int t = 0; t < 500; ++t) {
    const Multivector a = rng.multivector(), b = rng.multivector(), c = rng.multivector();
    EXPECT_TRUE(approx_equal((a * b) * c, a * (b * c), 1e-14, 1e-14));
  }
}

TEST(Conjugations, ReversionIsHermitianConjugate) {
  RandomStream rng(4);
  for (int t = 0; t < 500; ++t) {
    const Multivector a = rng.multivector(), b = rng.multivector();
    EXPECT_EQ(oracle::mat(reversion(a)), oracle::mat(a).adjoint());
    EXPECT_TRUE(approx_equal(reversion(a * b), reversion(b) * reversion(a), 1e-14, 1e-14));
  }
}

TEST(Conjugations, CliffordConjugateIsAdjugate) {
  RandomStream rng(5);
  for (int t = 0; t < 500; ++t) {
    const Multivector a = rng.multivector();
    const oracle::M2 m = oracle::mat(a);
    oracle::M2 adj;
    adj << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    EXPECT_EQ(oracle::mat(clifford_conj(a)), adj);
  }
}

TEST(Conjugations, GradeSigns) {
  const Multivector x({1, 2, 3, 4, 5, 6, 7, 8});
  EXPECT_EQ(reversion(x), Multivector({1, 2, 3, 4, -5, -6, -7, -8}));
  EXPECT_EQ(clifford_conj(x), Multivector({1, -2, -3, -4, -5, -6, -7, 8}));
  EXPECT_EQ(grade_involution(x), Multivector({1, -2, -3, -4, 5, 6, 7, -8}));
  EXPECT_EQ(grade(x, 0) + grade(x, 1) + grade(x, 2) + grade(x, 3), x);
}

TEST(Parts, SplitsSumToWhole) {
  const Multivector x({1, 2, 3, 4, 5, 6, 7, 8});
  EXPECT_EQ(parts(x, Part::Scalar) + parts(x, Part::Vector), x);
  EXPECT_EQ(parts(x, Part::Real) + parts(x, Part::Imag), x);
  EXPECT_EQ(parts(x, Part::Even) + parts(x, Part::Odd), x);
  EXPECT_EQ(parts(x, Part::Scalar), Multivector({1, 0, 0, 0, 0, 0, 0, 8}));
  EXPECT_EQ(parts(x, Part::Real), Multivector({1, 2, 3, 4, 0, 0, 0, 0}));
  EXPECT_EQ(parts(x, Part::Even), Multivector({1, 0, 0, 0, 5, 6, 7, 0}));
}

TEST(QuadraticForm, EqualsDeterminantAndTrace) {
  RandomStream rng(6);
  for (int t = 0; t < 500; ++t) {
    const Multivector a = rng.multivector();
    const oracle::M2 m = oracle::mat(a);
    EXPECT_NEAR(std::abs(quadratic_form(a) - m.determinant()), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(2.0 * scalar_like(a) - m.trace()), 0.0, 1e-14);
    const Multivector q = a * clifford_conj(a);
    EXPECT_TRUE(same(q, Multivector::complex_scalar(quadratic_form(a))));
  }
}

TEST(Inverse, MatchesMatrixInverse) {
  RandomStream rng(7);
  for (int t = 0; t < 500; ++t) {
    const Multivector a = rng.multivector();
    const Multivector ai = inverse(a);
    EXPECT_LT(oracle::rel_diff(oracle::mat(ai), oracle::mat(a).inverse()), 1e-12);
    EXPECT_TRUE(approx_equal(a * ai, one, 1e-12, 1e-12));
  }
}

TEST(Inverse, NullElementsThrow) {
  const Multivector P3 = (one + e3) * 0.5;
  EXPECT_THROW(inverse(P3), NonInvertible);
  EXPECT_THROW(inverse(Multivector{}), NonInvertible);
  EXPECT_THROW(inverse(one + e1), NonInvertible);
  EXPECT_TRUE(is_null(one + e1));
  EXPECT_FALSE(is_null(one + e1 * 0.5));
}

TEST(Dual, MultipliesByMinusI) {
  EXPECT_EQ(dual(I), one);
  EXPECT_EQ(dual(e12), e3);
  EXPECT_EQ(dual(dual(e1)), -e1);
}

TEST(Exponential, MatchesMatrixExponential) {
  RandomStream rng(8);
  for (int t = 0; t < 300; ++t) {
    const Multivector a = rng.multivector(1.5);
    EXPECT_LT(oracle::rel_diff(oracle::mat(exponential(a)), oracle::expm(oracle::mat(a))), 1e-13);
  }
}

TEST(Exponential, SmallArgumentSeries) {
  const Multivector a = e1 * 1e-6 + e23 * 2e-6;
  EXPECT_LT(oracle::rel_diff(oracle::mat(exponential(a)), oracle::expm(oracle::mat(a))), 1e-15);
  EXPECT_EQ(exponential(Multivector{}), one);
}

TEST(Exponential, NullArgumentIsLinear) {
  // (e1 + i e2)² = 0, so exp is exactly 1 + x.
  const Multivector x = e1 + e31;
  EXPECT_TRUE(same(exponential(x), one + x));
}

TEST(Exponential, HalfTurnAboutE3IsMinusOne) {
  const Multivector r = exponential(Multivector::bivector({0, 0, -std::numbers::pi}));
  EXPECT_LT(max_abs_diff(r, -one), 1e-14);
  EXPECT_LT(max_abs_diff(exp_complex_scalar({0.0, std::numbers::pi}), -one), 1e-15);
}

TEST(ToString, ListsNonzeroBlades) {
  EXPECT_EQ(to_string(Multivector{}), "0");
  EXPECT_EQ(to_string(e1 - e12 * 2.0), "1.000000e1 - 2.000000e12");
}

TEST(IdentitySuite, PassesOnSeededPairs) {
  const IdentityCheckReport r = check_identities(2000, 42);
  EXPECT_TRUE(r.all_passed);
  EXPECT_LT(r.max_rel_err, 1e-12);
  EXPECT_EQ(r.trials, 2000u);
}

TEST(IdentitySuite, SameSeedSameResult) {
  const auto a = check_identities(300, 7), b = check_identities(300, 7);
  EXPECT_EQ(a.max_rel_err, b.max_rel_err);
  EXPECT_EQ(a.product, b.product);
}
