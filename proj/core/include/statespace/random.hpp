#pragma once

#include <cstdint>
#include <random>

#include "statespace/linalg.hpp"

namespace statespace {

/// Seeded source used for every random fixture and property test.
///
/// The engine is MT19937-64 (std::mt19937_64, fully specified by the C++
/// standard). Uniform doubles take the top 53 bits of one draw; normals use
/// the Box-Muller transform on two uniforms. The standard library
/// distributions are avoided because their algorithms are
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  double normal();
  Complex complex_normal();               // E|z|^2 = 1
  std::size_t index(std::size_t n);       // [0, n)

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols);
ComplexMatrix random_hermitian(Rng& rng, std::size_t n);
ComplexMatrix random_unitary(Rng& rng, std::size_t n);
/// b x a isometry from the QR factorization of a Gaussian matrix.
ComplexMatrix random_isometry_matrix(Rng& rng, std::size_t out_dim, std::size_t in_dim);
ComplexVector random_unit_vector(Rng& rng, std::size_t n);
/// Full-rank mixed density matrix (Ginibre ensemble).
ComplexMatrix random_density_matrix(Rng& rng, std::size_t n);
ComplexMatrix random_pure_density(Rng& rng, std::size_t n);
/// Density matrix of the given rank.
ComplexMatrix random_density_of_rank(Rng& rng, std::size_t n, std::size_t rank);

}  // namespace statespace
