#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

#include <Eigen/Dense>

#include "statespace/lattice.hpp"

namespace statespace {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-9;   // relative, input check
inline constexpr double kEigResidualTol = 1e-8;  // relative, output guarantee
inline constexpr double kDegenerateGap = 1e-10;
inline constexpr std::size_t kJacobiMaxDim = 64;

// Basic helpers --------------------------------------------------------------

ComplexMatrix identity(std::size_t n);
ComplexMatrix pauli(int which);  // 0 = identity, 1..3 = sigma^1..sigma^3
ComplexMatrix basis_projector(std::size_t n, std::size_t k);
ComplexMatrix outer(const ComplexVector& v);
ComplexMatrix diag(std::span<const double> values);

double frobenius(const ComplexMatrix& a);
double hermiticity_defect(const ComplexMatrix& a);  // ||a - a*||_F
bool is_hermitian(const ComplexMatrix& a, double rel_tol = kHermitianTol);
bool all_finite(const ComplexMatrix& a);
ComplexMatrix hermitian_part(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);
double operator_norm(const ComplexMatrix& a);

// Kronecker products ---------------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// Hermitian eigensolver ------------------------------------------------------

/// Eigendecomposition a = V diag(values) V* with ascending values.
/// Degenerate clusters (gap < kDegenerateGap) get a canonical basis obtained by
/// ordered Gram-Schmidt of the standard basis projected onto the cluster;
/// isolated eigenvectors carry a fixed phase (first dominant entry real > 0).
struct HermitianEig {
  RealVector values;
  ComplexMatrix vectors;
};

enum class EigMethod { Auto, Jacobi, Tridiagonal };

struct EigOptions {
  EigMethod method = EigMethod::Auto;
  std::size_t max_sweeps = 100;
  double off_tol = 1e-13;  // relative to ||a||_F
};

HermitianEig herm_eig(const ComplexMatrix& a, const EigOptions& opts = {});

/// Smallest eigenvalue, cheaper than a full decomposition for large input.
double min_eigenvalue(const ComplexMatrix& a);
RealVector eigenvalues(const ComplexMatrix& a);

// Functional calculus --------------------------------------------------------

ComplexMatrix matfun(const ComplexMatrix& a, const std::function<double(double)>& f);
ComplexMatrix matfun_complex(const ComplexMatrix& a,
                             const std::function<Complex(double)>& f);
ComplexMatrix exp_i_herm(const ComplexMatrix& a);

// Partial trace --------------------------------------------------------------

/// Traces out every site not listed in keep. The kept sites appear in
/// ascending site order in the result.
ComplexMatrix partial_trace(const ComplexMatrix& a, const LatticeSpec& spec,
                            std::span<const std::size_t> keep);

/// Permutes tensor factors of a square operator: output factor i is input
/// factor perm[i]. dims are the input factor dimensions.
ComplexMatrix permute_factors(const ComplexMatrix& a, std::span<const std::size_t> dims,
                              std::span<const std::size_t> perm);

/// Permutation matrix P with P (x_0 (x) ... (x) x_{k-1}) =
/// x_{perm[0]} (x) ... (x) x_{perm[k-1]}.
ComplexMatrix factor_permutation_matrix(std::span<const std::size_t> dims,
                                        std::span<const std::size_t> perm);

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace statespace
