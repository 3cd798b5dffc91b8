#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "statespace/error.hpp"
#include "statespace/linalg.hpp"
#include "statespace/random.hpp"
#include "test_util.hpp"

using namespace statespace;

namespace {

ComplexMatrix real_diag(std::initializer_list<double> v) {
  std::vector<double> d(v);
  return diag(d);
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) { EXPECT_EQ(kron(identity(2), identity(2)), identity(4)); }

TEST(Kron, DiagonalPaulis) { EXPECT_EQ(kron(pauli(3), pauli(3)), real_diag({1, -1, -1, 1})); }

TEST(Kron, MatchesIndexFormula) {
  EXPECT_EQ(kron(pauli(1), identity(2)), oracle::kron_index(pauli(1), identity(2)));
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix a = random_ginibre(rng, 1 + rng.index(4), 1 + rng.index(4));
    const ComplexMatrix b = random_ginibre(rng, 1 + rng.index(4), 1 + rng.index(4));
    EXPECT_EQ(kron(a, b), oracle::kron_eigen(a, b));
  }
}

TEST(Kron, AssociativeAndMixedProduct) {
  Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 1 + rng.index(3);
    const ComplexMatrix a = random_ginibre(rng, n, n), b = random_ginibre(rng, n, n);
    const ComplexMatrix c = random_ginibre(rng, n, n), d = random_ginibre(rng, n, n);
    EXPECT_LE(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))), 1e-12);
    EXPECT_LE(max_abs(kron(a, b) * kron(c, d) - kron(ComplexMatrix(a * c), ComplexMatrix(b * d))), 1e-12);
  }
  // small integer entries are exact
  ComplexMatrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, -1, 5, 2;
  EXPECT_EQ(kron(a, b) * kron(b, a), kron(ComplexMatrix(a * b), ComplexMatrix(b * a)));
}

TEST(Kron, KronAllMatchesFold) {
  Rng rng(3);
  std::vector<ComplexMatrix> fs{random_ginibre(rng, 2, 2), random_ginibre(rng, 3, 3), random_ginibre(rng, 2, 2)};
  EXPECT_LE(max_abs(kron_all(fs) - oracle::kron_eigen(oracle::kron_eigen(fs[0], fs[1]), fs[2])), 1e-14);
}

TEST(HermEig, DiagonalInputSorted) {
  const auto e = herm_eig(real_diag({3, 1, 2}));
  ASSERT_EQ(e.values.size(), 3);
  EXPECT_DOUBLE_EQ(e.values(0), 1.0);
  EXPECT_DOUBLE_EQ(e.values(1), 2.0);
  EXPECT_DOUBLE_EQ(e.values(2), 3.0);
}

TEST(HermEig, PauliSpectrum) {
  const auto e = herm_eig(pauli(1));
  EXPECT_NEAR(e.values(0), -1.0, 1e-14);
  EXPECT_NEAR(e.values(1), 1.0, 1e-14);
}

TEST(HermEig, ReconstructionOnRandomMatrices) {
  Rng rng(4);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 2 + rng.index(15);
    const ComplexMatrix a = random_hermitian(rng, n);
    const auto e = herm_eig(a);
    const ComplexMatrix rec = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    ASSERT_LE(max_abs(rec - a), 1e-10) << "n = " << n;
    ASSERT_LE(max_abs(e.vectors.adjoint() * e.vectors - identity(n)), 1e-10);
  }
}

TEST(HermEig, AgreesWithGeneralSolver) {
  Rng rng(5);
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = 2 + rng.index(10);
    const ComplexMatrix a = random_hermitian(rng, n);
    const auto ref = oracle::eigenvalues_general(a);
    const auto e = herm_eig(a);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(e.values(static_cast<Eigen::Index>(i)), ref[i], 1e-10);
  }
}

TEST(HermEig, JacobiAndTridiagonalAgree) {
  Rng rng(6);
  for (std::size_t n : {3u, 8u, 20u}) {
    const ComplexMatrix a = random_hermitian(rng, n);
    const auto j = herm_eig(a, {EigMethod::Jacobi});
    const auto t = herm_eig(a, {EigMethod::Tridiagonal});
    EXPECT_LE((j.values - t.values).cwiseAbs().maxCoeff(), 1e-10);
    // same canonical eigenvectors for a simple spectrum
    EXPECT_LE(max_abs(j.vectors - t.vectors), 1e-8);
  }
}

TEST(HermEig, RejectsNonHermitian) {
  ComplexMatrix a(2, 2);
  a << 0, 1, 0, 0;
  EXPECT_THROW_CODE(herm_eig(a), ErrorCode::NotHermitian);
}

TEST(Matfun, SignOnDiagonal) {
  const auto s = matfun(real_diag({2, -3}), [](double x) { return x / std::abs(x); });
  EXPECT_LE(max_abs(s - real_diag({1, -1})), 1e-15);
}

TEST(Matfun, IdentityFunction) {
  Rng rng(7);
  const ComplexMatrix a = random_hermitian(rng, 6);
  EXPECT_LE(max_abs(matfun(a, [](double x) { return x; }) - a), 1e-10);
}

TEST(Matfun, SquareOfPauli) {
  EXPECT_LE(max_abs(matfun(pauli(1), [](double x) { return x * x; }) - pauli(1) * pauli(1)), 1e-14);
  EXPECT_LE(max_abs(matfun(pauli(1), [](double x) { return x * x; }) - identity(2)), 1e-14);
}

TEST(Matfun, Composition) {
  Rng rng(8);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix a = random_hermitian(rng, 2 + rng.index(6));
    auto f = [](double x) { return std::exp(x); };
    auto g = [](double x) { return std::log(x) + x * x; };
    const ComplexMatrix lhs = matfun(matfun(a, f), g);
    const ComplexMatrix rhs = matfun(a, [&](double x) { return g(f(x)); });
    EXPECT_LE(max_abs(lhs - rhs), 1e-9);
  }
}

TEST(PartialTrace, ProductInput) {
  Rng rng(9);
  const ComplexMatrix r = random_density_matrix(rng, 3), s = random_ginibre(rng, 2, 2);
  const LatticeSpec spec({3, 2});
  const std::vector<std::size_t> keep{0};
  EXPECT_LE(max_abs(partial_trace(kron(r, s), spec, keep) - r * trace(s)), 1e-14);
}

TEST(PartialTrace, FullTrace) {
  Rng rng(10);
  const ComplexMatrix a = random_ginibre(rng, 6, 6);
  const auto pt = partial_trace(a, LatticeSpec({2, 3}), std::vector<std::size_t>{});
  ASSERT_EQ(pt.rows(), 1);
  EXPECT_NEAR(std::abs(pt(0, 0) - a.trace()), 0.0, 1e-13);
}

TEST(PartialTrace, BellStateMarginal) {
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const auto m = partial_trace(outer(bell), LatticeSpec({2, 2}), std::vector<std::size_t>{0});
  EXPECT_LE(max_abs(m - 0.5 * identity(2)), 1e-15);
}

TEST(PartialTrace, MatchesIndexLoops) {
  Rng rng(11);
  const std::vector<std::size_t> dims{2, 3, 2};
  const LatticeSpec spec(dims);
  const ComplexMatrix a = random_ginibre(rng, 12, 12);
  for (const std::vector<std::size_t>& keep :
       std::vector<std::vector<std::size_t>>{{0}, {1}, {2}, {0, 2}, {1, 2}, {0, 1, 2}}) {
    EXPECT_LE(max_abs(partial_trace(a, spec, keep) - oracle::partial_trace_loops(a, dims, keep)), 1e-13);
  }
}

TEST(PartialTrace, RecoversFactorOfRandomProduct) {
  Rng rng(12);
  for (int k = 0; k < 20; ++k) {
    const ComplexMatrix r1 = random_density_matrix(rng, 3), r2 = random_density_matrix(rng, 2);
    EXPECT_LE(max_abs(partial_trace(kron(r1, r2), LatticeSpec({3, 2}), std::vector<std::size_t>{0}) - r1), 1e-12);
  }
}

TEST(PartialTrace, BadSiteSets) {
  const ComplexMatrix a = identity(4);
  EXPECT_THROW_CODE(partial_trace(a, LatticeSpec({2, 2}), std::vector<std::size_t>{2}), ErrorCode::BadSiteSet);
  EXPECT_THROW_CODE(partial_trace(a, LatticeSpec({2, 2}), std::vector<std::size_t>{0, 0}), ErrorCode::BadSiteSet);
  EXPECT_THROW_CODE(partial_trace(identity(3), LatticeSpec({2, 2}), std::vector<std::size_t>{0}),
                    ErrorCode::DimMismatch);
}

TEST(ExpIHerm, ZeroGenerator) { EXPECT_LE(max_abs(exp_i_herm(ComplexMatrix::Zero(3, 3)) - identity(3)), 1e-15); }

TEST(ExpIHerm, ClosedFormPauli) {
  const double a = std::numbers::pi / 2;
  const ComplexMatrix expected = std::cos(a) * identity(2) + Complex(0, std::sin(a)) * pauli(1);
  EXPECT_LE(max_abs(exp_i_herm(a * pauli(1)) - expected), 1e-14);
}

TEST(ExpIHerm, Diagonal) {
  const auto u = exp_i_herm(real_diag({0.3, -1.7}));
  EXPECT_LE(std::abs(u(0, 0) - std::polar(1.0, 0.3)), 1e-15);
  EXPECT_LE(std::abs(u(1, 1) - std::polar(1.0, -1.7)), 1e-15);
}

TEST(ExpIHerm, MatchesPadeExponential) {
  Rng rng(13);
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix h = random_hermitian(rng, 2 + rng.index(6));
    EXPECT_LE(max_abs(exp_i_herm(h) - oracle::exp_i(h)), 1e-10);
  }
}

TEST(PermuteFactors, MatchesPermutationMatrix) {
  Rng rng(14);
  const std::vector<std::size_t> dims{2, 3, 2};
  const std::vector<std::size_t> perm{2, 0, 1};
  const ComplexMatrix p = oracle::factor_permutation(dims, perm);
  EXPECT_EQ(factor_permutation_matrix(dims, perm), p);
  const ComplexMatrix a = random_ginibre(rng, 12, 12);
  EXPECT_LE(max_abs(permute_factors(a, dims, perm) - p * a * p.adjoint()), 1e-14);
}

TEST(BlockDiag, Layout) {
  ComplexMatrix a(1, 1), b(2, 2);
  a << 5;
  b << 1, 2, 3, 4;
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(0, 0) = 5;
  expected.bottomRightCorner(2, 2) = b;
  EXPECT_EQ(block_diag(a, b), expected);
}
