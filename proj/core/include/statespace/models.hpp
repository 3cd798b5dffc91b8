#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "statespace/lattice.hpp"
#include "statespace/linalg.hpp"
#include "statespace/states.hpp"

namespace statespace {

using Vec3 = std::array<double, 3>;

inline constexpr double kUnitTol = 1e-12;
inline constexpr double kGapTol = 1e-8;
inline constexpr double kAdmissibleTol = 1e-8;
inline constexpr double kOverlapTol = 1e-8;
inline constexpr double kProjectorTol = 1e-9;

Vec3 sphere_point(double theta, double phi);

/// H(w) = w_1 sigma^1 + w_2 sigma^2 + w_3 sigma^3. NotUnit unless |w| = 1.
ComplexMatrix berry_hamiltonian(const Vec3& w);

/// Line bundle sampled on a (theta, phi) grid over S^2. theta_i = pi i /
/// n_theta for i = 0..n_theta and phi_j = 2 pi j / n_phi; the poles are
/// single points.
struct GroundBundle {
  std::size_t n_theta = 0;
  std::size_t n_phi = 0;
  ComplexMatrix north;
  ComplexMatrix south;
  std::vector<std::vector<ComplexMatrix>> rows;  // rows[i - 1][j] for 0 < i < n_theta

  double theta(std::size_t i) const;
  double phi(std::size_t j) const;
};

GroundBundle make_bundle(std::size_t n_theta, std::size_t n_phi,
                         const std::function<ComplexMatrix(const Vec3&)>& projector);
/// Spectral projector of H(w) onto band 0 (lower) or 1 (upper).
ComplexMatrix berry_band_projector(const Vec3& w, int band);
GroundBundle berry_bundle(std::size_t n_theta, std::size_t n_phi, int band = 0);

/// Unit frame vectors on the same grid geometry as GroundBundle.
struct FrameGrid {
  std::size_t n_theta = 0;
  std::size_t n_phi = 0;
  ComplexVector north;
  ComplexVector south;
  std::vector<std::vector<ComplexVector>> rows;
};

/// Normalized column of largest norm of each projector.
FrameGrid frames_from_bundle(const GroundBundle& b);

struct ChernResult {
  long chern = 0;
  double raw = 0.0;       // sum of plaquette fluxes / 2 pi before rounding
  double residual = 0.0;  // |raw - chern|
  double max_plaquette_flux = 0.0;
  double flux_sum = 0.0;
};

/// Sum of plaquette link-phase fluxes. Plaquettes run (theta, phi) ->
/// (theta + d, phi) -> (theta + d, phi + d) -> (theta, phi + d), i.e.
/// counterclockwise seen from outside; the pole caps are triangles.
/// SingularOverlap if some link overlap is below kOverlapTol.
ChernResult chern_number_frames(const FrameGrid& f);
ChernResult chern_number(const GroundBundle& b);

// Quantum pump on an open spin-1/2 chain ----------------------------------

struct PumpParams {
  Vec3 w{0.0, 0.0, 1.0};
  double t = 0.0;
  std::size_t L = 2;
};

double pump_g_plus(double t);   // t - 1/2 on (1/2, 1], else 0
double pump_g_minus(double t);  // -t - 1/2 on [-1, -1/2), else 0

/// sigma.sigma on two qubits; spectrum {1, 1, 1, -3}.
ComplexMatrix heisenberg_pair();

ComplexMatrix pump_hamiltonian(const PumpParams& p, std::size_t size_cap = kDefaultSizeCap);

struct PumpGround {
  DensityMatrix rho;
  double energy = 0.0;
  double gap = 0.0;
};

/// DegenerateGround if E_1 - E_0 <= kGapTol.
PumpGround pump_ground(const PumpParams& p);

/// Projector onto all eigenvectors within tol of the lowest eigenvalue.
ComplexMatrix ground_space_projector(const ComplexMatrix& h, double tol = kGapTol);

std::vector<Vec3> octahedron_points();
/// Cell-centred points -1 + (2j + 1)/n, j = 0..n-1.
std::vector<double> pump_t_grid(std::size_t n);

struct PumpPoint {
  std::size_t w_index = 0;
  std::size_t t_index = 0;
  double t = 0.0;
  double energy = 0.0;
  double gap = 0.0;
  double dist_next_t = 0.0;  // weak* distance to (w, t_{j+1}), 0 on the last row
  double dist_next_w = 0.0;  // weak* distance to (w_{i+1 mod n}, t)
};

struct PumpFamilyReport {
  std::size_t L = 0;
  std::vector<Vec3> ws;
  std::vector<double> ts;
  std::vector<PumpPoint> points;  // w-major
  double min_gap = 0.0;
  double continuity = 0.0;
  double pole_plus = 0.0;   // max over w of the ground-space deviation at t = 1
  double pole_minus = 0.0;  // same at t = -1
};

PumpFamilyReport pump_family(const std::vector<Vec3>& ws, const std::vector<double>& ts,
                             std::size_t L, std::size_t metric_terms = 64);

// Free fermions ------------------------------------------------------------

/// f_t(a) = a / |a|^t. NotGapped if some |eigenvalue| < kAdmissibleTol.
ComplexMatrix flatten(const ComplexMatrix& a, double t);
std::size_t neg_index(const ComplexMatrix& a);
ComplexMatrix block_sum(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace statespace
