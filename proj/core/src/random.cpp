#include "statespace/random.hpp"

#include <cmath>
#include <numbers>

namespace statespace {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex{re, im} * std::numbers::sqrt2 * 0.5;
}

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.complex_normal();
  }
  return g;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  const ComplexMatrix g = random_ginibre(rng, n, n);
  return hermitian_part(g);
}

ComplexMatrix random_isometry_matrix(Rng& rng, std::size_t out_dim, std::size_t in_dim) {
  const ComplexMatrix g = random_ginibre(rng, out_dim, in_dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() *
                    ComplexMatrix::Identity(static_cast<Eigen::Index>(out_dim),
                                            static_cast<Eigen::Index>(in_dim));
  // Fix the phase ambiguity of QR so the distribution is Haar.
  const ComplexMatrix r = qr.matrixQR().topRows(static_cast<Eigen::Index>(in_dim))
                              .triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
  return random_isometry_matrix(rng, n, n);
}

ComplexVector random_unit_vector(Rng& rng, std::size_t n) {
  ComplexVector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

ComplexMatrix random_density_of_rank(Rng& rng, std::size_t n, std::size_t rank) {
  const ComplexMatrix g = random_ginibre(rng, n, rank);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

ComplexMatrix random_density_matrix(Rng& rng, std::size_t n) {
  return random_density_of_rank(rng, n, n);
}

ComplexMatrix random_pure_density(Rng& rng, std::size_t n) {
  return outer(random_unit_vector(rng, n));
}

}  // namespace statespace
