#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "statespace/lattice.hpp"
#include "statespace/linalg.hpp"
#include "statespace/states.hpp"

namespace statespace {

inline constexpr double kIsometryTol = 1e-10;

/// f : C^a -> C^b with f* f = I_a.
class Isometry {
 public:
  /// NotIsometry if ||f* f - I||_F > tol.
  explicit Isometry(ComplexMatrix m, double tol = kIsometryTol);
  static Isometry identity(std::size_t n);
  /// Inclusion C^a -> C^b onto the first a coordinates.
  static Isometry inclusion(std::size_t in_dim, std::size_t out_dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t in_dim() const noexcept { return static_cast<std::size_t>(m_.cols()); }
  std::size_t out_dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  double defect() const;  // ||f* f - I||_F

 private:
  ComplexMatrix m_;
};

Isometry compose(const Isometry& outer, const Isometry& inner);
Isometry tensor(const Isometry& a, const Isometry& b);
Isometry tensor_all(std::span<const Isometry> fs);

/// op on the listed sites, identity elsewhere, with the sites of op taken in
/// the order given by sub.
ComplexMatrix embed_local(const ComplexMatrix& op, std::span<const std::size_t> sub,
                          const LatticeSpec& spec);

/// out += coeff * embed_local(op, sub, spec) without forming the embedding.
void accumulate_local(ComplexMatrix& out, const ComplexMatrix& op,
                      std::span<const std::size_t> sub, const LatticeSpec& spec,
                      Complex coeff = Complex{1.0, 0.0});

/// f_Lambda = f (x) ... (x) f over n_sites sites.
Isometry site_isometry_blowup(const Isometry& f, std::size_t n_sites,
                              std::size_t size_cap = kDefaultSizeCap);

/// Ad(f*) : b -> f* b f. Unital and completely positive.
ComplexMatrix cp_pullback(const Isometry& f, const ComplexMatrix& b);

/// Pushforward of a state along f: rho -> f rho f*.
DensityMatrix state_pushforward(const Isometry& f, const DensityMatrix& rho);

/// Per-site merge of two lattices with equal site counts.
LatticeSpec merged_spec(const LatticeSpec& a, const LatticeSpec& b);

/// Permutation taking the factor order (a_0..a_{m-1}, b_0..b_{m-1}) to
/// (a_0, b_0, a_1, b_1, ...): output factor i is input factor perm[i].
std::vector<std::size_t> interleave_permutation(std::size_t n_sites);

/// The canonical isomorphism eta realized on density matrices: omega_1 (x)
/// omega_2 on the merged lattice, system 1 slowest within each merged site.
DensityMatrix eta_interleave(const DensityMatrix& rho1, const DensityMatrix& rho2,
                             const LatticeSpec& spec1, const LatticeSpec& spec2);

/// || push(blowup(f1 (x) f2), eta(rho1, rho2))
///    - eta(push(blowup(f1), rho1), push(blowup(f2), rho2)) ||_F
/// with rho_i on n_sites sites of dimension in_dim(f_i).
double naturality_residual(const Isometry& f1, const Isometry& f2, const DensityMatrix& rho1,
                           const DensityMatrix& rho2, std::size_t n_sites);

// Operad of isometries ----------------------------------------------------

/// gamma(g; f_1..f_k) = g o (f_1 (x) ... (x) f_k).
Isometry operad_compose(const Isometry& g, std::span<const Isometry> fs);

/// The symmetric-group action on an isometry's input factors: f sigma =
/// f o P_sigma, where P_sigma sends u_1 (x) ... (x) u_k to
/// u_{sigma^-1(1)} (x) ... (x) u_{sigma^-1(k)}. sigma[j] is the image of j
/// (0-based); in_dims are the input factor dims of f sigma.
Isometry right_action(const Isometry& f, std::span<const std::size_t> in_dims,
                      std::span<const std::size_t> sigma);

/// Operator of u_1 (x) ... (x) u_k -> u_{sigma^-1(1)} (x) ... (x) u_{sigma^-1(k)}
/// where factor j has dimension dims[j].
ComplexMatrix sigma_operator(std::span<const std::size_t> dims,
                             std::span<const std::size_t> sigma);

/// First equivariance identity:
///   gamma(g sigma; f_1..f_k)
///     = gamma(g; f_{sigma^-1(1)}..f_{sigma^-1(k)}) sigma(j_1..j_k)
/// where g has input factors of dims rows(f_{sigma^-1(i)}) and each f_j is
/// treated as one input block. Returns the Frobenius deviation.
double operad_equivariance_residual(const Isometry& g, std::span<const Isometry> fs,
                                    std::span<const std::size_t> sigma);

/// Second equivariance identity:
///   gamma(g; f_1 tau_1..f_k tau_k) = gamma(g; f_1..f_k) (tau_1 (+) ... (+) tau_k)
/// input_dims[i] lists the input factor dims of f_i tau_i.
double operad_block_equivariance_residual(const Isometry& g, std::span<const Isometry> fs,
                                          std::span<const std::vector<std::size_t>> input_dims,
                                          std::span<const std::vector<std::size_t>> taus);

/// Associativity: gamma(gamma(c; d_1..d_k); e_1..e_j) against
/// gamma(c; gamma(d_1; e..), .., gamma(d_k; e..)) where d_s consumes
/// arities[s] consecutive e's.
double operad_associativity_residual(const Isometry& c, std::span<const Isometry> ds,
                                     std::span<const Isometry> es,
                                     std::span<const std::size_t> arities);

/// theta_j(f; omega_1..omega_j) = push(f, omega_1 (x) ... (x) omega_j).
DensityMatrix theta_action(const Isometry& f, std::span<const DensityMatrix> states);

/// || theta(gamma(g; f_1..f_k); omegas)
///    - theta(g; theta(f_1; omegas_1), .., theta(f_k; omegas_k)) ||_F
double theta_compatibility_residual(const Isometry& g, std::span<const Isometry> fs,
                                    std::span<const DensityMatrix> states,
                                    std::span<const std::size_t> arities);

}  // namespace statespace
