#include "statespace/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "statespace/algebra.hpp"
#include "statespace/error.hpp"

namespace statespace {

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    fail(ErrorCode::InvalidState, "density matrix must be square and nonempty");
  }
  if (!m.allFinite()) fail(ErrorCode::InvalidState, "density matrix has non-finite entries");
  if (!is_hermitian(m, tol)) fail(ErrorCode::InvalidState, "density matrix is not Hermitian");
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol) {
    fail(ErrorCode::InvalidState, "density matrix trace " + std::to_string(tr) + " != 1");
  }
  ComplexMatrix h = hermitian_part(m);
  const HermitianEig e = herm_eig(h);
  if (e.values(0) < -tol) {
    fail(ErrorCode::InvalidState,
         "density matrix has negative eigenvalue " + std::to_string(e.values(0)));
  }
  if (e.values(0) < 0.0) {
    RealVector clipped = e.values.cwiseMax(0.0);
    clipped /= clipped.sum();
    h = e.vectors * clipped.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    h = hermitian_part(h);
  }
  const double t = h.trace().real();
  if (t != 1.0) h /= t;
  return DensityMatrix(std::move(h));
}

DensityMatrix DensityMatrix::trusted(const ComplexMatrix& m) {
  ComplexMatrix h = hermitian_part(m);
  const double t = h.trace().real();
  if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorCode::InvalidState, "state has zero trace");
  if (t != 1.0) h /= t;
  return DensityMatrix(std::move(h));
}

DensityMatrix DensityMatrix::verbatim(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0 || !m.allFinite()) {
    fail(ErrorCode::InvalidState, "density matrix must be square, nonempty and finite");
  }
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::pure(const ComplexVector& v) {
  const double n = v.norm();
  if (!(n > 0.0)) fail(ErrorCode::InvalidState, "zero vector has no state");
  return DensityMatrix(outer(v / n));
}

DensityMatrix DensityMatrix::basis_state(std::size_t n, std::size_t k) {
  return DensityMatrix(basis_projector(n, k));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n) {
  return DensityMatrix(identity(n) / static_cast<double>(n));
}

Complex DensityMatrix::expectation(const ComplexMatrix& a) const {
  if (a.rows() != m_.rows() || a.cols() != m_.cols()) {
    fail(ErrorCode::DimMismatch, "observable dimension does not match state");
  }
  // tr(rho a) without forming the product
  return (m_.transpose().cwiseProduct(a)).sum();
}

double DensityMatrix::purity() const { return m_.cwiseAbs2().sum(); }

namespace {

bool is_exact_identity(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (a(i, j) != (i == j ? Complex{1.0, 0.0} : Complex{0.0, 0.0})) return false;
    }
  }
  return true;
}

}  // namespace

double action_norm(const ComplexMatrix& a, const DensityMatrix& rho) {
  if (a.cols() != static_cast<Eigen::Index>(rho.dim()) || a.rows() != a.cols()) {
    fail(ErrorCode::DimMismatch, "action operator dimension does not match state");
  }
  return (a * rho.matrix() * a.adjoint()).trace().real();
}

DensityMatrix act(const ComplexMatrix& a, const DensityMatrix& rho, double tau_ideal) {
  if (a.cols() != static_cast<Eigen::Index>(rho.dim()) || a.rows() != a.cols()) {
    fail(ErrorCode::DimMismatch, "action operator dimension does not match state");
  }
  if (is_exact_identity(a)) return rho;
  const ComplexMatrix m = a * rho.matrix() * a.adjoint();
  const double norm = m.trace().real();
  if (!(norm > tau_ideal)) {
    fail(ErrorCode::GelfandIdeal,
         "operator lies in the Gelfand ideal of the state (omega(A*A) = " +
             std::to_string(norm) + ")");
  }
  return DensityMatrix::trusted(m / norm);
}

bool is_pure(const DensityMatrix& rho, double tol) { return rho.purity() >= 1.0 - tol; }

double entropy(const DensityMatrix& rho) {
  const RealVector ev = eigenvalues(rho.matrix());
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double l = ev(i);
    if (l > 0.0) s -= l * std::log(l);
  }
  return std::max(s, 0.0);
}

ComplexMatrix corner_projector(std::size_t n, std::size_t zeros) {
  if (zeros > n) fail(ErrorCode::InvalidArgument, "corner projector has more zeros than dim");
  ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i + zeros < n; ++i) {
    p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return p;
}

DensityMatrix restrict_corner(const DensityMatrix& rho, std::size_t corner_dim) {
  const std::size_t n = rho.dim();
  if (corner_dim == 0 || corner_dim > n) {
    fail(ErrorCode::DimMismatch, "corner dimension out of range");
  }
  const auto c = static_cast<Eigen::Index>(corner_dim);
  const ComplexMatrix& m = rho.matrix();
  const double weight = m.topLeftCorner(c, c).trace().real();
  if (weight < 1.0 - 1e-8) {
    fail(ErrorCode::NotSupported,
         "state is not supported on the corner (weight " + std::to_string(weight) + ")");
  }
  ComplexMatrix block = m.topLeftCorner(c, c);
  const auto rest = static_cast<Eigen::Index>(n) - c;
  const bool exact = rest == 0 || (m.rightCols(rest).cwiseAbs().maxCoeff() == 0.0 &&
                                   m.bottomRows(rest).cwiseAbs().maxCoeff() == 0.0);
  if (exact) return DensityMatrix(std::move(block));
  return DensityMatrix::trusted(block / weight);
}

DensityMatrix extend_corner(const DensityMatrix& omega, std::size_t ambient_dim) {
  if (omega.dim() > ambient_dim) fail(ErrorCode::DimMismatch, "state larger than ambient dim");
  const auto n = static_cast<Eigen::Index>(ambient_dim);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  const auto c = static_cast<Eigen::Index>(omega.dim());
  m.topLeftCorner(c, c) = omega.matrix();
  return DensityMatrix(std::move(m));
}

StabilizedState stabilize(const DensityMatrix& rho, const ComplexVector& psi_site,
                          std::size_t k, const LatticeSpec& spec) {
  if (rho.dim() != spec.total_dim()) fail(ErrorCode::DimMismatch, "state does not match lattice");
  const double nrm = psi_site.norm();
  if (std::abs(nrm - 1.0) > 1e-10) fail(ErrorCode::NotUnit, "stabilizing vector is not a unit vector");
  const auto m = static_cast<std::size_t>(psi_site.size());
  const LatticeSpec vac_spec = LatticeSpec(std::vector<std::size_t>(spec.site_count(), m),
                                           std::max(spec.size_cap(), kDefaultSizeCap));
  ComplexVector vac = ComplexVector::Ones(1);
  for (std::size_t s = 0; s < spec.site_count(); ++s) vac = kron(vac, psi_site);
  const DensityMatrix vacuum = DensityMatrix::pure(vac);

  StabilizedState out{rho, spec};
  for (std::size_t copy = 0; copy < k; ++copy) {
    LatticeSpec merged = merged_spec(out.spec, vac_spec);
    out.state = eta_interleave(out.state, vacuum, out.spec, vac_spec);
    out.spec = std::move(merged);
  }
  return out;
}

}  // namespace statespace
