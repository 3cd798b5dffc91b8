#include "statespace/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "statespace/error.hpp"

namespace statespace {

Isometry::Isometry(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() < m_.cols() || m_.cols() == 0) {
    fail(ErrorCode::NotIsometry, "isometry must be b x a with b >= a >= 1");
  }
  if (!m_.allFinite()) fail(ErrorCode::NotIsometry, "isometry has non-finite entries");
  const double d = defect();
  if (d > tol) fail(ErrorCode::NotIsometry, "f*f deviates from identity by " + std::to_string(d));
}

Isometry Isometry::identity(std::size_t n) { return Isometry(statespace::identity(n)); }

Isometry Isometry::inclusion(std::size_t in_dim, std::size_t out_dim) {
  return Isometry(ComplexMatrix::Identity(static_cast<Eigen::Index>(out_dim),
                                          static_cast<Eigen::Index>(in_dim)));
}

double Isometry::defect() const {
  return (m_.adjoint() * m_ - ComplexMatrix::Identity(m_.cols(), m_.cols())).norm();
}

Isometry compose(const Isometry& outer, const Isometry& inner) {
  if (outer.in_dim() != inner.out_dim()) fail(ErrorCode::DimMismatch, "cannot compose isometries");
  return Isometry(outer.matrix() * inner.matrix());
}

Isometry tensor(const Isometry& a, const Isometry& b) {
  return Isometry(kron(a.matrix(), b.matrix()));
}

Isometry tensor_all(std::span<const Isometry> fs) {
  ComplexMatrix m = ComplexMatrix::Identity(1, 1);
  for (const auto& f : fs) m = kron(m, f.matrix());
  return Isometry(std::move(m));
}

namespace {

// Offsets of the multi-index of the listed sites (first listed slowest).
std::vector<Eigen::Index> site_offsets(std::span<const std::size_t> sites, const LatticeSpec& spec,
                                       const std::vector<std::size_t>& strides) {
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
}

}  // namespace

void accumulate_local(ComplexMatrix& out, const ComplexMatrix& op,
                      std::span<const std::size_t> sub, const LatticeSpec& spec, Complex coeff) {
  check_site_set(sub, spec);
  const auto dsub = static_cast<Eigen::Index>(spec.sub_dim(sub));
  if (op.rows() != dsub || op.cols() != dsub) {
    fail(ErrorCode::DimMismatch, "local operator dimension does not match its sites");
  }
  const auto n = static_cast<Eigen::Index>(spec.total_dim());
  if (out.rows() != n || out.cols() != n) fail(ErrorCode::DimMismatch, "target does not match lattice");
  std::vector<std::size_t> rest;
  for (std::size_t s = 0; s < spec.site_count(); ++s) {
    if (std::find(sub.begin(), sub.end(), s) == sub.end()) rest.push_back(s);
  }
  const auto strides = spec.strides();
  const auto sub_off = site_offsets(sub, spec, strides);
  const auto rest_off = site_offsets(rest, spec, strides);
  for (Eigen::Index c = 0; c < dsub; ++c) {
    for (Eigen::Index r = 0; r < dsub; ++r) {
      const Complex v = coeff * op(r, c);
      if (v == Complex{0.0, 0.0}) continue;
      const Eigen::Index row = sub_off[static_cast<std::size_t>(r)];
      const Eigen::Index col = sub_off[static_cast<std::size_t>(c)];
      for (Eigen::Index e : rest_off) out(row + e, col + e) += v;
    }
  }
}

ComplexMatrix embed_local(const ComplexMatrix& op, std::span<const std::size_t> sub,
                          const LatticeSpec& spec) {
  const auto n = static_cast<Eigen::Index>(spec.total_dim());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  accumulate_local(out, op, sub, spec);
  return out;
}

Isometry site_isometry_blowup(const Isometry& f, std::size_t n_sites, std::size_t size_cap) {
  if (n_sites == 0) fail(ErrorCode::InvalidArgument, "blowup needs at least one site");
  std::size_t out = 1;
  for (std::size_t i = 0; i < n_sites; ++i) {
    if (out > size_cap / f.out_dim()) fail(ErrorCode::SizeCap, "blown-up isometry exceeds size cap");
    out *= f.out_dim();
  }
  ComplexMatrix m = f.matrix();
  for (std::size_t i = 1; i < n_sites; ++i) m = kron(m, f.matrix());
  return Isometry(std::move(m));
}

ComplexMatrix cp_pullback(const Isometry& f, const ComplexMatrix& b) {
  const auto n = static_cast<Eigen::Index>(f.out_dim());
  if (b.rows() != n || b.cols() != n) fail(ErrorCode::DimMismatch, "operator does not match isometry range");
  return f.matrix().adjoint() * b * f.matrix();
}

DensityMatrix state_pushforward(const Isometry& f, const DensityMatrix& rho) {
  if (rho.dim() != f.in_dim()) fail(ErrorCode::DimMismatch, "state does not match isometry domain");
  return DensityMatrix::trusted(f.matrix() * rho.matrix() * f.matrix().adjoint());
}

LatticeSpec merged_spec(const LatticeSpec& a, const LatticeSpec& b) {
  if (a.site_count() != b.site_count()) {
    fail(ErrorCode::SiteCountMismatch, "lattices have different site counts");
  }
  std::vector<std::size_t> dims(a.site_count());
  for (std::size_t i = 0; i < dims.size(); ++i) dims[i] = a.dim(i) * b.dim(i);
  return LatticeSpec(std::move(dims), a.size_cap());
}

std::vector<std::size_t> interleave_permutation(std::size_t n_sites) {
  std::vector<std::size_t> perm(2 * n_sites);
  for (std::size_t i = 0; i < n_sites; ++i) {
    perm[2 * i] = i;
    perm[2 * i + 1] = n_sites + i;
  }
  return perm;
}

DensityMatrix eta_interleave(const DensityMatrix& rho1, const DensityMatrix& rho2,
                             const LatticeSpec& spec1, const LatticeSpec& spec2) {
  if (rho1.dim() != spec1.total_dim() || rho2.dim() != spec2.total_dim()) {
    fail(ErrorCode::DimMismatch, "state does not match its lattice");
  }
  merged_spec(spec1, spec2);  // SizeCap, SiteCountMismatch
  const ComplexMatrix joint = kron(rho1.matrix(), rho2.matrix());
  if (spec1.site_count() == 1) return DensityMatrix::trusted(joint);
  std::vector<std::size_t> dims(spec1.dims().begin(), spec1.dims().end());
  dims.insert(dims.end(), spec2.dims().begin(), spec2.dims().end());
  const auto perm = interleave_permutation(spec1.site_count());
  return DensityMatrix::trusted(permute_factors(joint, dims, perm));
}

double naturality_residual(const Isometry& f1, const Isometry& f2, const DensityMatrix& rho1,
                           const DensityMatrix& rho2, std::size_t n_sites) {
  const LatticeSpec in1 = LatticeSpec::uniform(n_sites, f1.in_dim());
  const LatticeSpec in2 = LatticeSpec::uniform(n_sites, f2.in_dim());
  const LatticeSpec out1 = LatticeSpec::uniform(n_sites, f1.out_dim());
  const LatticeSpec out2 = LatticeSpec::uniform(n_sites, f2.out_dim());
  if (rho1.dim() != in1.total_dim() || rho2.dim() != in2.total_dim()) {
    fail(ErrorCode::DimMismatch, "states do not match isometry domains");
  }
  const Isometry big12 = site_isometry_blowup(tensor(f1, f2), n_sites);
  const DensityMatrix lhs = state_pushforward(big12, eta_interleave(rho1, rho2, in1, in2));
  const DensityMatrix rhs =
      eta_interleave(state_pushforward(site_isometry_blowup(f1, n_sites), rho1),
                     state_pushforward(site_isometry_blowup(f2, n_sites), rho2), out1, out2);
  return (lhs.matrix() - rhs.matrix()).norm();
}

Isometry operad_compose(const Isometry& g, std::span<const Isometry> fs) {
  std::size_t prod = 1;
  for (const auto& f : fs) prod *= f.out_dim();
  if (g.in_dim() != prod) fail(ErrorCode::DimMismatch, "operad composition: dims do not match");
  if (fs.empty()) return g;
  return Isometry(g.matrix() * tensor_all(fs).matrix());
}

namespace {

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> sigma) {
  std::vector<std::size_t> inv(sigma.size(), sigma.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    if (sigma[j] >= sigma.size() || inv[sigma[j]] != sigma.size()) {
      fail(ErrorCode::InvalidArgument, "not a permutation");
    }
    inv[sigma[j]] = j;
  }
  return inv;
}

}  // namespace

ComplexMatrix sigma_operator(std::span<const std::size_t> dims,
                             std::span<const std::size_t> sigma) {
  if (dims.size() != sigma.size()) fail(ErrorCode::DimMismatch, "permutation length mismatch");
  const auto inv = inverse_permutation(sigma);
  return factor_permutation_matrix(dims, inv);
}

Isometry right_action(const Isometry& f, std::span<const std::size_t> in_dims,
                      std::span<const std::size_t> sigma) {
  std::size_t prod = 1;
  for (std::size_t d : in_dims) prod *= d;
  if (prod != f.in_dim()) fail(ErrorCode::DimMismatch, "input factor dims do not match isometry");
  return Isometry(f.matrix() * sigma_operator(in_dims, sigma));
}

double operad_equivariance_residual(const Isometry& g, std::span<const Isometry> fs,
                                    std::span<const std::size_t> sigma) {
  const std::size_t k = fs.size();
  if (sigma.size() != k) fail(ErrorCode::DimMismatch, "permutation length must equal arity");
  const auto inv = inverse_permutation(sigma);
  std::vector<std::size_t> range_dims(k), domain_dims(k);
  std::vector<Isometry> permuted;
  permuted.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    range_dims[j] = fs[j].out_dim();
    domain_dims[j] = fs[j].in_dim();
  }
  for (std::size_t i = 0; i < k; ++i) permuted.push_back(fs[inv[i]]);

  const Isometry lhs = operad_compose(right_action(g, range_dims, sigma), fs);
  const Isometry base = operad_compose(g, permuted);
  const ComplexMatrix rhs = base.matrix() * sigma_operator(domain_dims, sigma);
  return (lhs.matrix() - rhs).norm();
}

double operad_block_equivariance_residual(const Isometry& g, std::span<const Isometry> fs,
                                          std::span<const std::vector<std::size_t>> input_dims,
                                          std::span<const std::vector<std::size_t>> taus) {
  const std::size_t k = fs.size();
  if (input_dims.size() != k || taus.size() != k) {
    fail(ErrorCode::DimMismatch, "need one factor list and one permutation per operation");
  }
  std::vector<Isometry> acted;
  ComplexMatrix block_perm = ComplexMatrix::Identity(1, 1);
  for (std::size_t i = 0; i < k; ++i) {
    acted.push_back(right_action(fs[i], input_dims[i], taus[i]));
    block_perm = kron(block_perm, sigma_operator(input_dims[i], taus[i]));
  }
  const Isometry lhs = operad_compose(g, acted);
  const ComplexMatrix rhs = operad_compose(g, fs).matrix() * block_perm;
  return (lhs.matrix() - rhs).norm();
}

double operad_associativity_residual(const Isometry& c, std::span<const Isometry> ds,
                                     std::span<const Isometry> es,
                                     std::span<const std::size_t> arities) {
  if (arities.size() != ds.size()) fail(ErrorCode::DimMismatch, "one arity per inner operation");
  if (std::accumulate(arities.begin(), arities.end(), std::size_t{0}) != es.size()) {
    fail(ErrorCode::DimMismatch, "arities must sum to the number of outer inputs");
  }
  const Isometry lhs = operad_compose(operad_compose(c, ds), es);
  std::vector<Isometry> grouped;
  std::size_t pos = 0;
  for (std::size_t s = 0; s < ds.size(); ++s) {
    grouped.push_back(operad_compose(ds[s], es.subspan(pos, arities[s])));
    pos += arities[s];
  }
  const Isometry rhs = operad_compose(c, grouped);
  return (lhs.matrix() - rhs.matrix()).norm();
}

DensityMatrix theta_action(const Isometry& f, std::span<const DensityMatrix> states) {
  ComplexMatrix joint = ComplexMatrix::Identity(1, 1);
  for (const auto& s : states) joint = kron(joint, s.matrix());
  if (static_cast<std::size_t>(joint.rows()) != f.in_dim()) {
    fail(ErrorCode::DimMismatch, "states do not match isometry domain");
  }
  return DensityMatrix::trusted(f.matrix() * joint * f.matrix().adjoint());
}

double theta_compatibility_residual(const Isometry& g, std::span<const Isometry> fs,
                                    std::span<const DensityMatrix> states,
                                    std::span<const std::size_t> arities) {
  if (arities.size() != fs.size()) fail(ErrorCode::DimMismatch, "one arity per operation");
  if (std::accumulate(arities.begin(), arities.end(), std::size_t{0}) != states.size()) {
    fail(ErrorCode::DimMismatch, "arities must sum to the number of states");
  }
  const DensityMatrix lhs = theta_action(operad_compose(g, fs), states);
  std::vector<DensityMatrix> inner;
  std::size_t pos = 0;
  for (std::size_t s = 0; s < fs.size(); ++s) {
    inner.push_back(theta_action(fs[s], states.subspan(pos, arities[s])));
    pos += arities[s];
  }
  const DensityMatrix rhs = theta_action(g, inner);
  return (lhs.matrix() - rhs.matrix()).norm();
}

}  // namespace statespace
