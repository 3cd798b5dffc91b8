#pragma once

#include <cstddef>

#include "statespace/lattice.hpp"
#include "statespace/linalg.hpp"

namespace statespace {

inline constexpr double kStateTol = 1e-9;
inline constexpr double kGelfandTol = 1e-12;

/// A state of M_n(C), represented by its density matrix.
///
/// from_matrix validates Hermiticity, unit trace and positivity to kStateTol.
/// Small negative eigenvalues (>= -kStateTol) are clipped and the trace is
/// renormalized; anything worse is an InvalidState error.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const ComplexMatrix& m, double tol = kStateTol);
  /// For results of operations that preserve states by construction; only
  /// symmetrizes and renormalizes the trace.
  static DensityMatrix trusted(const ComplexMatrix& m);
  /// Stores m unchanged (square and finite only). For reloading matrices
  /// that were written out from a DensityMatrix.
  static DensityMatrix verbatim(const ComplexMatrix& m);
  static DensityMatrix pure(const ComplexVector& v);
  static DensityMatrix basis_state(std::size_t n, std::size_t k);
  static DensityMatrix maximally_mixed(std::size_t n);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

  /// omega(a) = tr(rho a)
  Complex expectation(const ComplexMatrix& a) const;
  double purity() const;

 private:
  friend DensityMatrix restrict_corner(const DensityMatrix&, std::size_t);
  friend DensityMatrix extend_corner(const DensityMatrix&, std::size_t);

  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// The state action A . omega = omega(A* . A) / omega(A* A), realized as
/// a rho a* / tr(a rho a*). GelfandIdeal when tr(a rho a*) <= tau_ideal.
DensityMatrix act(const ComplexMatrix& a, const DensityMatrix& rho,
                  double tau_ideal = kGelfandTol);

/// omega(A* A) = tr(a rho a*), the quantity act() divides by.
double action_norm(const ComplexMatrix& a, const DensityMatrix& rho);

bool is_pure(const DensityMatrix& rho, double tol);
double entropy(const DensityMatrix& rho);

/// Restriction to the leading corner algebra P M_n P, P = diag(1..1, 0..0)
/// with corner_dim ones. NotSupported if rho(P) < 1 - 1e-8.
DensityMatrix restrict_corner(const DensityMatrix& rho, std::size_t corner_dim);
/// The unique extension omega o Ad(P) to M_ambient.
DensityMatrix extend_corner(const DensityMatrix& omega, std::size_t ambient_dim);

/// Leading-corner projector P^n_k: diag with n-k ones followed by k zeros.
ComplexMatrix corner_projector(std::size_t n, std::size_t zeros);

struct StabilizedState {
  DensityMatrix state;
  LatticeSpec spec;
};

/// Stacks k copies of the factorized pure state (x)_sites |psi><psi| onto rho,
/// merging per site with the eta convention (existing system slowest).
StabilizedState stabilize(const DensityMatrix& rho, const ComplexVector& psi_site,
                          std::size_t k, const LatticeSpec& spec);

}  // namespace statespace
