#pragma once

#include <aps/matrix_rep.hpp>
#include <aps/multivector.hpp>
#include <aps/random.hpp>

#include <cmath>
#include <cstdint>

namespace aps {

struct IdentityCheckReport {
  std::size_t trials = 0;
  std::size_t inverse_skipped = 0; // pairs whose first element is null
  double product = 0.0;            // worst relative error per channel
  double reversion = 0.0;
  double clifford = 0.0;
  double inverse = 0.0;
  double trace = 0.0;
  double determinant = 0.0;
  double max_rel_err = 0.0;
  bool all_passed = true;
};

/// Cross-checks every algebra operation on random pairs against 2×2 complex
/// matrix arithmetic: products, Hermitian conjugate, adjugate, matrix
/// inverse, trace and determinant.
inline IdentityCheckReport check_identities(std::size_t trials, std::uint64_t seed,
                                            double tolerance = tol::rel) {
  RandomStream rng(seed, 0);
  IdentityCheckReport r;
  r.trials = trials;
  auto scalar_err = [](Complex got, Complex want) {
    return std::abs(got - want) / std::fmax(std::fmax(std::abs(got), std::abs(want)), 1.0);
  };
  for (std::size_t t = 0; t < trials; ++t) {
    const Multivector a = rng.multivector();
    const Multivector b = rng.multivector();
    const MatrixRep A = to_rep(a), B = to_rep(b);

    r.product = std::fmax(r.product, rel_error(to_rep(a * b), A * B));
    r.reversion = std::fmax(r.reversion, rel_error(to_rep(reversion(a)), A.adjoint()));
    const MatrixRep adj{{A(1, 1), -A(0, 1), -A(1, 0), A(0, 0)}};
    r.clifford = std::fmax(r.clifford, rel_error(to_rep(clifford_conj(a)), adj));
    r.trace = std::fmax(r.trace, scalar_err(2.0 * scalar_like(a), A.trace()));
    r.determinant = std::fmax(r.determinant, scalar_err(quadratic_form(a), A.det()));
    if (is_null(a)) {
      ++r.inverse_skipped;
    } else {
      r.inverse = std::fmax(r.inverse, rel_error(to_rep(inverse(a)), A.inverse()));
    }
  }
  r.max_rel_err = std::fmax(std::fmax(std::fmax(r.product, r.reversion), std::fmax(r.clifford, r.inverse)),
                            std::fmax(r.trace, r.determinant));
  r.all_passed = r.max_rel_err <= tolerance;
  return r;
}

} // namespace aps
