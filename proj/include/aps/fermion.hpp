#pragma once

// Clifford algebras generated from fermion annihilation/creation operators.
// All matrices here have entries in the Gaussian integers, so every
// anticommutation identity is checked with exact integer arithmetic.

#include <aps/error.hpp>
#include <aps/matrix_rep.hpp>
#include <aps/multivector.hpp>

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aps {

struct GaussInt {
  long long re = 0;
  long long im = 0;

  constexpr GaussInt operator+(const GaussInt &o) const { return {re + o.re, im + o.im}; }
  constexpr GaussInt operator-(const GaussInt &o) const { return {re - o.re, im - o.im}; }
  constexpr GaussInt operator-() const { return {-re, -im}; }
  constexpr GaussInt operator*(const GaussInt &o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  constexpr GaussInt conj() const { return {re, -im}; }
  constexpr bool operator==(const GaussInt &) const = default;
  Complex to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

inline constexpr GaussInt kImagUnit{0, 1};

/// Dense square matrix over the Gaussian integers.
class IntMatrix {
public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

  static IntMatrix identity(std::size_t dim) {
    IntMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
      m(i, i) = {1, 0};
    return m;
  }

  std::size_t dim() const { return dim_; }
  GaussInt &operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  const GaussInt &operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

  IntMatrix operator+(const IntMatrix &o) const {
    IntMatrix r(dim_);
    for (std::size_t k = 0; k < a_.size(); ++k)
      r.a_[k] = a_[k] + o.a_[k];
    return r;
  }
  IntMatrix operator-(const IntMatrix &o) const {
    IntMatrix r(dim_);
    for (std::size_t k = 0; k < a_.size(); ++k)
      r.a_[k] = a_[k] - o.a_[k];
    return r;
  }
  IntMatrix operator*(const GaussInt &s) const {
    IntMatrix r(dim_);
    for (std::size_t k = 0; k < a_.size(); ++k)
      r.a_[k] = a_[k] * s;
    return r;
  }
  IntMatrix operator*(const IntMatrix &o) const {
    IntMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t k = 0; k < dim_; ++k) {
        const GaussInt x = (*this)(i, k);
        if (x == GaussInt{})
          continue;
        for (std::size_t j = 0; j < dim_; ++j)
          r(i, j) = r(i, j) + x * o(k, j);
      }
    return r;
  }
  IntMatrix adjoint() const {
    IntMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        r(j, i) = (*this)(i, j).conj();
    return r;
  }
  bool is_zero() const {
    for (const auto &x : a_)
      if (!(x == GaussInt{}))
        return false;
    return true;
  }
  bool operator==(const IntMatrix &) const = default;

  const std::vector<GaussInt> &entries() const { return a_; }

private:
  std::size_t dim_ = 0;
  std::vector<GaussInt> a_;
};

inline IntMatrix kron(const IntMatrix &A, const IntMatrix &B) {
  const std::size_t n = A.dim(), m = B.dim();
  IntMatrix r(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l)
          r(i * m + k, j * m + l) = A(i, j) * B(k, l);
  return r;
}

inline IntMatrix anticommutator(const IntMatrix &A, const IntMatrix &B) {
  return A * B + B * A;
}
inline IntMatrix commutator(const IntMatrix &A, const IntMatrix &B) { return A * B - B * A; }

/// Annihilation operators a_k and their adjoints for n modes, as 2ⁿ×2ⁿ
/// matrices. Mode k carries the sign string diag(1,−1) on modes before it.
struct FermionModeSet {
  int n = 0;
  std::vector<IntMatrix> a;
  std::vector<IntMatrix> adag;
};

inline constexpr int kMaxModes = 6;

inline FermionModeSet build_modes(int n) {
  if (n < 1 || n > kMaxModes)
    throw TooManyModes("build_modes: n = " + std::to_string(n) + " outside 1.." +
                       std::to_string(kMaxModes));
  IntMatrix lower(2), sign(2);
  lower(1, 0) = {1, 0}; // maps the upper state to the lower one: a = e1 P3
  sign(0, 0) = {1, 0};
  sign(1, 1) = {-1, 0};
  const IntMatrix id2 = IntMatrix::identity(2);

  FermionModeSet modes;
  modes.n = n;
  for (int k = 0; k < n; ++k) {
    IntMatrix op = (k == 0) ? lower : sign;
    for (int j = 1; j < n; ++j)
      op = kron(op, j < k ? sign : (j == k ? lower : id2));
    modes.adag.push_back(op.adjoint());
    modes.a.push_back(std::move(op));
  }
  return modes;
}

/// Canonical anticommutation relations, exactly.
inline bool car_holds(const FermionModeSet &modes) {
  const std::size_t dim = std::size_t{1} << modes.n;
  const IntMatrix id = IntMatrix::identity(dim);
  for (int j = 0; j < modes.n; ++j)
    for (int k = 0; k < modes.n; ++k) {
      const auto &aj = modes.a[static_cast<std::size_t>(j)];
      const auto &ak = modes.a[static_cast<std::size_t>(k)];
      const auto &akd = modes.adag[static_cast<std::size_t>(k)];
      const IntMatrix mixed = anticommutator(aj, akd);
      if (!(j == k ? mixed == id : mixed.is_zero()))
        return false;
      if (!anticommutator(aj, ak).is_zero())
        return false;
    }
  return true;
}

struct GeneratedBasis {
  int n = 0;
  std::vector<IntMatrix> vectors;
};

/// e_{2k−1} = a_k + a_k†, e_{2k} = i(a_k − a_k†); for one mode also
/// e3 = a†a − a a†.
inline GeneratedBasis generate_basis(const FermionModeSet &modes) {
  GeneratedBasis basis;
  basis.n = modes.n;
  for (int k = 0; k < modes.n; ++k) {
    const auto &a = modes.a[static_cast<std::size_t>(k)];
    const auto &ad = modes.adag[static_cast<std::size_t>(k)];
    basis.vectors.push_back(a + ad);
    basis.vectors.push_back((a - ad) * kImagUnit);
  }
  if (modes.n == 1)
    basis.vectors.push_back(modes.adag[0] * modes.a[0] - modes.a[0] * modes.adag[0]);
  return basis;
}

/// e_j e_k + e_k e_j = 2 δ_jk, exactly.
inline bool clifford_holds(const GeneratedBasis &basis) {
  if (basis.vectors.empty())
    return false;
  const IntMatrix two = IntMatrix::identity(basis.vectors.front().dim()) * GaussInt{2, 0};
  for (std::size_t j = 0; j < basis.vectors.size(); ++j)
    for (std::size_t k = 0; k < basis.vectors.size(); ++k) {
      const IntMatrix ac = anticommutator(basis.vectors[j], basis.vectors[k]);
      if (!(j == k ? ac == two : ac.is_zero()))
        return false;
    }
  return true;
}

/// All ordered products e_{i1} e_{i2}… over subsets of the generating vectors.
inline std::vector<IntMatrix> blade_products(const GeneratedBasis &basis) {
  const std::size_t m = basis.vectors.size();
  const std::size_t dim = basis.vectors.front().dim();
  std::vector<IntMatrix> out;
  out.reserve(std::size_t{1} << m);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    IntMatrix p = IntMatrix::identity(dim);
    for (std::size_t k = 0; k < m; ++k)
      if (mask & (std::size_t{1} << k))
        p = p * basis.vectors[k];
    out.push_back(std::move(p));
  }
  return out;
}

/// Rank over the reals of a set of complex matrices, each flattened to
/// 2·dim² real coordinates. Gaussian elimination with partial pivoting.
inline int real_rank(const std::vector<IntMatrix> &mats, double eps = 1e-9) {
  if (mats.empty())
    return 0;
  const std::size_t cols = 2 * mats.front().entries().size();
  std::vector<std::vector<double>> rows;
  rows.reserve(mats.size());
  for (const auto &m : mats) {
    std::vector<double> r;
    r.reserve(cols);
    for (const auto &z : m.entries()) {
      r.push_back(static_cast<double>(z.re));
      r.push_back(static_cast<double>(z.im));
    }
    rows.push_back(std::move(r));
  }
  int rank = 0;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    std::size_t best = pivot_row;
    for (std::size_t r = pivot_row + 1; r < rows.size(); ++r)
      if (std::fabs(rows[r][c]) > std::fabs(rows[best][c]))
        best = r;
    if (std::fabs(rows[best][c]) <= eps)
      continue;
    std::swap(rows[best], rows[pivot_row]);
    for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
      const double f = rows[r][c] / rows[pivot_row][c];
      if (f == 0.0)
        continue;
      for (std::size_t k = c; k < cols; ++k)
        rows[r][k] -= f * rows[pivot_row][k];
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

/// Real dimension of the algebra spanned by the generated vectors. Only
/// computed up to three modes (64 products of 8×8 matrices).
inline std::optional<int> algebra_dimension(const GeneratedBasis &basis) {
  if (basis.n > 3)
    return std::nullopt;
  return real_rank(blade_products(basis));
}

struct FermionReport {
  int n = 0;
  bool car_ok = false;
  bool clifford_ok = false;
  std::optional<int> dimension;
};

inline FermionReport fermion_report(int n) {
  const FermionModeSet modes = build_modes(n);
  const GeneratedBasis basis = generate_basis(modes);
  return {n, car_holds(modes), clifford_holds(basis), algebra_dimension(basis)};
}

/// Conversion of a 2×2 integer matrix to the float representation used by
/// the multivector core.
inline MatrixRep to_matrix_rep(const IntMatrix &m) {
  if (m.dim() != 2)
    throw Error("fermion_gen", "DimensionMismatch", "to_matrix_rep expects a 2x2 matrix");
  return {{m(0, 0).to_complex(), m(0, 1).to_complex(), m(1, 0).to_complex(),
           m(1, 1).to_complex()}};
}

struct NullFlagReport {
  bool a_is_e1_P3 = false;        // a = e1 P3 = (e1 − i e2)/2
  bool adag_is_P3_e1 = false;     // a† = P3 e1
  bool adag_is_e1_Pbar3 = false;  // a† = e1 P̄3
  bool a_null = false;            // a ā = 0
  bool adag_null = false;
  bool adag_a_is_P3 = false;      // a†a = P3
  bool a_adag_is_Pbar3 = false;   // a a† = P̄3
  bool raises_down_to_up = false; // a† (e1 P3) = P3
  bool lowers_up_to_down = false; // a P3 = e1 P3

  bool all() const {
    return a_is_e1_P3 && adag_is_P3_e1 && adag_is_e1_Pbar3 && a_null && adag_null &&
           adag_a_is_P3 && a_adag_is_Pbar3 && raises_down_to_up && lowers_up_to_down;
  }
};

/// Identifies the single-mode ladder operators with null flags of the algebra.
/// Values are small dyadic rationals, so exact comparison is valid.
inline NullFlagReport null_flag_check(const FermionModeSet &modes) {
  if (modes.n != 1)
    throw Error("fermion_gen", "InvalidModes", "null_flag_check requires exactly one mode");
  using namespace basis;
  const Multivector P3 = (one + e3) * 0.5;
  const Multivector Pbar3 = (one - e3) * 0.5;
  const Multivector a = from_rep(to_matrix_rep(modes.a[0]));
  const Multivector ad = from_rep(to_matrix_rep(modes.adag[0]));

  NullFlagReport r;
  r.a_is_e1_P3 = a == e1 * P3 && a == (e1 - e2 * Complex{0, 1}) * 0.5;
  r.adag_is_P3_e1 = ad == P3 * e1;
  r.adag_is_e1_Pbar3 = ad == e1 * Pbar3;
  r.a_null = a * clifford_conj(a) == Multivector{};
  r.adag_null = ad * clifford_conj(ad) == Multivector{};
  r.adag_a_is_P3 = ad * a == P3;
  r.a_adag_is_Pbar3 = a * ad == Pbar3;
  r.raises_down_to_up = ad * (e1 * P3) == P3;
  r.lowers_up_to_down = a * P3 == e1 * P3;
  return r;
}

struct Spin4Report {
  bool self_dual_closes = false;
  bool anti_dual_closes = false;
  bool triples_commute = false;
  bool ok() const { return self_dual_closes && anti_dual_closes && triples_commute; }
};

/// For two modes (four Euclidean vectors) the six bivectors split into
/// S±_a = e_jk ± e_lm with (jk,lm) ∈ {(23,14), (31,24), (12,34)}. Each triple
/// must close as [S_a, S_b] = c ε_abc S_c with one constant c per triple, and
/// the triples must commute with each other.
inline Spin4Report spin4_check(const GeneratedBasis &basis) {
  if (basis.n != 2 || basis.vectors.size() != 4)
    throw Error("fermion_gen", "InvalidModes", "spin4_check requires exactly two modes");
  const auto &e = basis.vectors;
  auto biv = [&](int j, int k) { return e[static_cast<std::size_t>(j)] * e[static_cast<std::size_t>(k)]; };
  const IntMatrix b23 = biv(1, 2), b31 = biv(2, 0), b12 = biv(0, 1);
  const IntMatrix b14 = biv(0, 3), b24 = biv(1, 3), b34 = biv(2, 3);

  auto closes = [](const std::array<IntMatrix, 3> &S) {
    const IntMatrix c01 = commutator(S[0], S[1]);
    for (long long c : {2LL, -2LL, 4LL, -4LL}) {
      const GaussInt g{c, 0};
      if (c01 == S[2] * g && commutator(S[1], S[2]) == S[0] * g &&
          commutator(S[2], S[0]) == S[1] * g)
        return true;
    }
    return false;
  };
  const std::array<IntMatrix, 3> plus{b23 + b14, b31 + b24, b12 + b34};
  const std::array<IntMatrix, 3> minus{b23 - b14, b31 - b24, b12 - b34};

  Spin4Report r;
  r.self_dual_closes = closes(plus);
  r.anti_dual_closes = closes(minus);
  r.triples_commute = true;
  for (const auto &p : plus)
    for (const auto &m : minus)
      r.triples_commute = r.triples_commute && commutator(p, m).is_zero();
  return r;
}

} // namespace aps
