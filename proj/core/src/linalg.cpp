#include "statespace/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "statespace/error.hpp"

namespace statespace {

ComplexMatrix identity(std::size_t n) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

ComplexMatrix pauli(int which) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  const Complex i{0.0, 1.0};
  switch (which) {
    case 0: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = -i; m(1, 0) = i; break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: fail(ErrorCode::InvalidArgument, "pauli index must be 0..3");
  }
  return m;
}

ComplexMatrix basis_projector(std::size_t n, std::size_t k) {
  if (k >= n) fail(ErrorCode::InvalidArgument, "basis index out of range");
  ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
  return p;
}

ComplexMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

ComplexMatrix diag(std::span<const double> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return m;
}

double frobenius(const ComplexMatrix& a) { return a.norm(); }

double hermiticity_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).norm();
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return hermiticity_defect(a) <= rel_tol * std::max(a.norm(), 1e-300);
}

bool all_finite(const ComplexMatrix& a) { return a.allFinite(); }

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return (a + a.adjoint()) * 0.5;
}

Complex trace(const ComplexMatrix& a) { return a.trace(); }

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

namespace {

void check_square_hermitian(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::NotHermitian, "matrix is not square");
  if (!a.allFinite()) fail(ErrorCode::NotHermitian, "matrix has non-finite entries");
  if (!is_hermitian(a, kHermitianTol)) {
    fail(ErrorCode::NotHermitian,
         "matrix is not Hermitian (defect " + std::to_string(hermiticity_defect(a)) + ")");
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

// Cyclic complex Jacobi. Each (p,q) rotation is J = D R with D removing the
// phase of a_pq and R the real Jacobi rotation of the resulting real block.
HermitianEig jacobi_eig(const ComplexMatrix& input, const EigOptions& opts) {
  ComplexMatrix a = hermitian_part(input);
  const Eigen::Index n = a.rows();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double scale = a.norm();
  const double target = opts.off_tol * scale;

  std::size_t sweep = 0;
  while (scale > 0.0 && off_diagonal_norm(a) >= target) {
    if (sweep++ >= opts.max_sweeps) {
      fail(ErrorCode::NoConvergence, "Jacobi eigensolver exceeded sweep cap");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex b = a(p, q);
        const double mag = std::abs(b);
        if (mag == 0.0) continue;
        const Complex phase = b / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  HermitianEig out;
  out.values.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) out.values(i) = a(i, i).real();
  out.vectors = std::move(v);
  return out;
}

HermitianEig tridiagonal_eig(const ComplexMatrix& input) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(input));
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::NoConvergence, "tridiagonal QR eigensolver did not converge");
  }
  return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

void fix_phase(Eigen::Ref<ComplexVector> v) {
  const double vmax = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m >= 0.5 * vmax && m > 0.0) {
      v *= std::conj(v(i)) / m;
      v(i) = m;
      return;
    }
  }
}

// Ascending order, canonical basis within degenerate clusters, fixed phases.
void canonicalize(HermitianEig& e) {
  const Eigen::Index n = e.values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return e.values(x) < e.values(y); });
  RealVector vals(n);
  ComplexMatrix vecs(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    vals(i) = e.values(order[static_cast<std::size_t>(i)]);
    vecs.col(i) = e.vectors.col(order[static_cast<std::size_t>(i)]);
  }

  const double spread = n > 0 ? std::max(1.0, vals.cwiseAbs().maxCoeff()) : 1.0;
  const double gap_tol = kDegenerateGap * spread;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && vals(end) - vals(end - 1) < gap_tol) ++end;
    const Eigen::Index m = end - start;
    if (m == 1) {
      fix_phase(vecs.col(start));
    } else {
      const ComplexMatrix basis = vecs.middleCols(start, m);
      ComplexMatrix chosen(n, m);
      Eigen::Index found = 0;
      std::vector<bool> used(static_cast<std::size_t>(n), false);
      while (found < m) {
        // Ordered Gram-Schmidt of standard basis vectors projected onto the
        // cluster; take the first whose residual is comfortably nonzero.
        const double threshold = 0.5 * std::sqrt(static_cast<double>(m - found) / n);
        bool progressed = false;
        for (Eigen::Index k = 0; k < n && found < m; ++k) {
          if (used[static_cast<std::size_t>(k)]) continue;
          ComplexVector x = basis * basis.row(k).adjoint();
          for (Eigen::Index j = 0; j < found; ++j) {
            x -= chosen.col(j) * chosen.col(j).dot(x);
          }
          const double nx = x.norm();
          if (nx >= threshold) {
            chosen.col(found++) = x / nx;
            used[static_cast<std::size_t>(k)] = true;
            progressed = true;
            break;
          }
        }
        if (!progressed) break;
      }
      if (found == m) vecs.middleCols(start, m) = chosen;
    }
    start = end;
  }
  e.values = std::move(vals);
  e.vectors = std::move(vecs);
}

}  // namespace

HermitianEig herm_eig(const ComplexMatrix& a, const EigOptions& opts) {
  check_square_hermitian(a);
  if (a.rows() == 0) return HermitianEig{RealVector(0), ComplexMatrix(0, 0)};
  EigMethod method = opts.method;
  if (method == EigMethod::Auto) {
    method = static_cast<std::size_t>(a.rows()) <= kJacobiMaxDim ? EigMethod::Jacobi
                                                                   : EigMethod::Tridiagonal;
  }
  HermitianEig e = method == EigMethod::Jacobi ? jacobi_eig(a, opts) : tridiagonal_eig(a);
  canonicalize(e);
  return e;
}

RealVector eigenvalues(const ComplexMatrix& a) {
  check_square_hermitian(a);
  if (static_cast<std::size_t>(a.rows()) <= kJacobiMaxDim) return herm_eig(a).values;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::NoConvergence, "eigenvalue solver did not converge");
  }
  return solver.eigenvalues();
}

double min_eigenvalue(const ComplexMatrix& a) {
  const RealVector v = eigenvalues(a);
  return v.size() > 0 ? v(0) : 0.0;
}

ComplexMatrix matfun_complex(const ComplexMatrix& a, const std::function<Complex(double)>& f) {
  const HermitianEig e = herm_eig(a);
  ComplexVector fv(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    const Complex y = f(e.values(i));
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) {
      fail(ErrorCode::DomainError,
           "function undefined at eigenvalue " + std::to_string(e.values(i)));
    }
    fv(i) = y;
  }
  return e.vectors * fv.asDiagonal() * e.vectors.adjoint();
}

ComplexMatrix matfun(const ComplexMatrix& a, const std::function<double(double)>& f) {
  return hermitian_part(matfun_complex(a, [&](double x) { return Complex{f(x), 0.0}; }));
}

ComplexMatrix exp_i_herm(const ComplexMatrix& a) {
  return matfun_complex(a, [](double x) { return std::polar(1.0, x); });
}

ComplexMatrix partial_trace(const ComplexMatrix& a, const LatticeSpec& spec,
                            std::span<const std::size_t> keep) {
  check_site_set(keep, spec);
  const auto n = static_cast<Eigen::Index>(spec.total_dim());
  if (a.rows() != n || a.cols() != n) {
    fail(ErrorCode::DimMismatch, "operator dimension does not match lattice");
  }
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < spec.site_count(); ++s) {
    if (!std::binary_search(kept.begin(), kept.end(), s)) traced.push_back(s);
  }
  const auto strides = spec.strides();

  auto offsets = [&](const std::vector<std::size_t>& sites) {
    std::vector<Eigen::Index> off{0};
    for (std::size_t s : sites) {
      std::vector<Eigen::Index> next;
      next.reserve(off.size() * spec.dim(s));
      for (Eigen::Index o : off) {
        for (std::size_t d = 0; d < spec.dim(s); ++d) {
          next.push_back(o + static_cast<Eigen::Index>(d * strides[s]));
        }
      }
      off = std::move(next);
    }
    return off;
  };
  const auto kept_off = offsets(kept);
  const auto traced_off = offsets(traced);
  const auto dk = static_cast<Eigen::Index>(kept_off.size());

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index c = 0; c < dk; ++c) {
    for (Eigen::Index r = 0; r < dk; ++r) {
      Complex s = 0.0;
      for (Eigen::Index t : traced_off) {
        s += a(kept_off[static_cast<std::size_t>(r)] + t, kept_off[static_cast<std::size_t>(c)] + t);
      }
      out(r, c) = s;
    }
  }
  return out;
}

namespace {

// Index map for a factor permutation: out index -> in index.
std::vector<Eigen::Index> permutation_index_map(std::span<const std::size_t> dims,
                                                std::span<const std::size_t> perm) {
  const std::size_t k = dims.size();
  if (perm.size() != k) fail(ErrorCode::DimMismatch, "permutation length mismatch");
  std::vector<bool> seen(k, false);
  for (std::size_t p : perm) {
    if (p >= k || seen[p]) fail(ErrorCode::InvalidArgument, "not a permutation");
    seen[p] = true;
  }
  std::vector<std::size_t> in_strides(k, 1);
  for (std::size_t i = k; i-- > 1;) in_strides[i - 1] = in_strides[i] * dims[i];
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;

  std::vector<Eigen::Index> map(total);
  std::vector<std::size_t> digits(k, 0);  // output digits, factor i has dim dims[perm[i]]
  for (std::size_t o = 0; o < total; ++o) {
    std::size_t in = 0;
    for (std::size_t i = 0; i < k; ++i) in += digits[i] * in_strides[perm[i]];
    map[o] = static_cast<Eigen::Index>(in);
    for (std::size_t i = k; i-- > 0;) {
      if (++digits[i] < dims[perm[i]]) break;
      digits[i] = 0;
    }
  }
  return map;
}

}  // namespace

ComplexMatrix factor_permutation_matrix(std::span<const std::size_t> dims,
                                        std::span<const std::size_t> perm) {
  const auto map = permutation_index_map(dims, perm);
  const auto n = static_cast<Eigen::Index>(map.size());
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (Eigen::Index o = 0; o < n; ++o) p(o, map[static_cast<std::size_t>(o)]) = 1.0;
  return p;
}

ComplexMatrix permute_factors(const ComplexMatrix& a, std::span<const std::size_t> dims,
                              std::span<const std::size_t> perm) {
  const auto map = permutation_index_map(dims, perm);
  const auto n = static_cast<Eigen::Index>(map.size());
  if (a.rows() != n || a.cols() != n) fail(ErrorCode::DimMismatch, "operator/factor dims mismatch");
  ComplexMatrix out(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      out(r, c) = a(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]);
    }
  }
  return out;
}

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace statespace
