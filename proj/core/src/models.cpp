#include "statespace/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "statespace/algebra.hpp"
#include "statespace/error.hpp"
#include "statespace/metric.hpp"
#include "statespace/parallel.hpp"

namespace statespace {

Vec3 sphere_point(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

namespace {

void check_unit(const Vec3& w) {
  const double n = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
  if (!(std::abs(n - 1.0) <= kUnitTol)) {
    fail(ErrorCode::NotUnit, "parameter vector has norm " + std::to_string(n));
  }
}

void check_projector(const ComplexMatrix& p) {
  if (p.rows() != p.cols() || (p * p - p).norm() > kProjectorTol ||
      (p - p.adjoint()).norm() > kProjectorTol || std::abs(p.trace().real() - 1.0) > kProjectorTol) {
    fail(ErrorCode::InvalidArgument, "bundle entry is not a rank-1 projector");
  }
}

ComplexVector frame_of(const ComplexMatrix& p) {
  Eigen::Index best = 0;
  p.colwise().norm().maxCoeff(&best);
  const ComplexVector v = p.col(best);
  return v / v.norm();
}

Complex link(const ComplexVector& a, const ComplexVector& b) {
  const Complex z = a.dot(b);  // <a|b>
  const double m = std::abs(z);
  if (!(m >= kOverlapTol)) {
    fail(ErrorCode::SingularOverlap, "link overlap " + std::to_string(m) + " is too small");
  }
  return z / m;
}

}  // namespace

ComplexMatrix berry_hamiltonian(const Vec3& w) {
  check_unit(w);
  return w[0] * pauli(1) + w[1] * pauli(2) + w[2] * pauli(3);
}

double GroundBundle::theta(std::size_t i) const {
  return std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_theta);
}

double GroundBundle::phi(std::size_t j) const {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phi);
}

GroundBundle make_bundle(std::size_t n_theta, std::size_t n_phi,
                         const std::function<ComplexMatrix(const Vec3&)>& projector) {
  if (n_theta < 2 || n_phi < 3) fail(ErrorCode::InvalidArgument, "S^2 grid needs n_theta >= 2, n_phi >= 3");
  GroundBundle b;
  b.n_theta = n_theta;
  b.n_phi = n_phi;
  b.north = projector({0.0, 0.0, 1.0});
  b.south = projector({0.0, 0.0, -1.0});
  b.rows.resize(n_theta - 1);
  for (std::size_t i = 1; i < n_theta; ++i) {
    for (std::size_t j = 0; j < n_phi; ++j) {
      b.rows[i - 1].push_back(projector(sphere_point(b.theta(i), b.phi(j))));
    }
  }
  return b;
}

ComplexMatrix berry_band_projector(const Vec3& w, int band) {
  if (band != 0 && band != 1) fail(ErrorCode::InvalidArgument, "band must be 0 or 1");
  const HermitianEig e = herm_eig(berry_hamiltonian(w));
  return outer(e.vectors.col(band));
}

GroundBundle berry_bundle(std::size_t n_theta, std::size_t n_phi, int band) {
  return make_bundle(n_theta, n_phi, [band](const Vec3& w) { return berry_band_projector(w, band); });
}

FrameGrid frames_from_bundle(const GroundBundle& b) {
  FrameGrid f;
  f.n_theta = b.n_theta;
  f.n_phi = b.n_phi;
  check_projector(b.north);
  check_projector(b.south);
  f.north = frame_of(b.north);
  f.south = frame_of(b.south);
  f.rows.resize(b.rows.size());
  for (std::size_t i = 0; i < b.rows.size(); ++i) {
    for (const auto& p : b.rows[i]) {
      check_projector(p);
      f.rows[i].push_back(frame_of(p));
    }
  }
  return f;
}

ChernResult chern_number_frames(const FrameGrid& f) {
  if (f.n_theta < 2 || f.rows.size() != f.n_theta - 1) {
    fail(ErrorCode::InvalidArgument, "frame grid has the wrong number of rows");
  }
  for (const auto& row : f.rows) {
    if (row.size() != f.n_phi) fail(ErrorCode::InvalidArgument, "frame grid row has the wrong length");
  }
  ChernResult out;
  auto add = [&](std::initializer_list<const ComplexVector*> loop) {
    Complex prod{1.0, 0.0};
    const auto* first = *loop.begin();
    const ComplexVector* prev = first;
    for (auto it = loop.begin() + 1; it != loop.end(); ++it) {
      prod *= link(*prev, **it);
      prev = *it;
    }
    prod *= link(*prev, *first);
    const double flux = std::arg(prod);
    out.flux_sum += flux;
    out.max_plaquette_flux = std::max(out.max_plaquette_flux, std::abs(flux));
  };
  const std::size_t m = f.n_phi;
  const std::size_t last = f.rows.size() - 1;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t k = (j + 1) % m;
    add({&f.north, &f.rows[0][j], &f.rows[0][k]});
    for (std::size_t i = 0; i < last; ++i) {
      add({&f.rows[i][j], &f.rows[i + 1][j], &f.rows[i + 1][k], &f.rows[i][k]});
    }
    add({&f.rows[last][j], &f.south, &f.rows[last][k]});
  }
  out.raw = out.flux_sum / (2.0 * std::numbers::pi);
  out.chern = std::lround(out.raw);
  out.residual = std::abs(out.raw - static_cast<double>(out.chern));
  return out;
}

ChernResult chern_number(const GroundBundle& b) { return chern_number_frames(frames_from_bundle(b)); }

// Pump -----------------------------------------------------------------------

double pump_g_plus(double t) { return t > 0.5 && t <= 1.0 ? t - 0.5 : 0.0; }
double pump_g_minus(double t) { return t >= -1.0 && t < -0.5 ? -t - 0.5 : 0.0; }

ComplexMatrix heisenberg_pair() {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  for (int a = 1; a <= 3; ++a) h += kron(pauli(a), pauli(a));
  return h;
}

ComplexMatrix pump_hamiltonian(const PumpParams& p, std::size_t size_cap) {
  check_unit(p.w);
  if (!(p.t >= -1.0 && p.t <= 1.0)) fail(ErrorCode::InvalidArgument, "pump parameter t outside [-1, 1]");
  if (p.L < 2 || p.L > 12 || p.L % 2 != 0) {
    fail(ErrorCode::InvalidArgument, "pump chain length must be even and in [2, 12]");
  }
  const LatticeSpec spec = LatticeSpec::uniform(p.L, 2, size_cap);
  const auto n = static_cast<Eigen::Index>(spec.total_dim());
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  const double field = std::sqrt(std::max(0.0, 1.0 - p.t * p.t));
  if (field != 0.0) {
    const ComplexMatrix hw = berry_hamiltonian(p.w);
    for (std::size_t v = 0; v < p.L; ++v) {
      const std::size_t site[] = {v};
      accumulate_local(h, hw, site, spec, v % 2 == 0 ? field : -field);
    }
  }
  const ComplexMatrix heis = heisenberg_pair();
  const double gp = pump_g_plus(p.t);
  const double gm = pump_g_minus(p.t);
  for (std::size_t v = 0; v + 1 < p.L; ++v) {
    const double g = v % 2 == 0 ? gp : gm;
    if (g == 0.0) continue;
    const std::size_t pair[] = {v, v + 1};
    accumulate_local(h, heis, pair, spec, g);
  }
  return h;
}

PumpGround pump_ground(const PumpParams& p) {
  const HermitianEig e = herm_eig(pump_hamiltonian(p));
  const double gap = e.values(1) - e.values(0);
  if (!(gap > kGapTol)) {
    fail(ErrorCode::DegenerateGround, "ground state is degenerate (gap " + std::to_string(gap) + ")");
  }
  return PumpGround{DensityMatrix::pure(e.vectors.col(0)), e.values(0), gap};
}

ComplexMatrix ground_space_projector(const ComplexMatrix& h, double tol) {
  const HermitianEig e = herm_eig(h);
  Eigen::Index k = 1;
  while (k < e.values.size() && e.values(k) - e.values(0) <= tol) ++k;
  const ComplexMatrix v = e.vectors.leftCols(k);
  return v * v.adjoint();
}

std::vector<Vec3> octahedron_points() {
  return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
}

std::vector<double> pump_t_grid(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t j = 0; j < n; ++j) {
    t[j] = -1.0 + (2.0 * static_cast<double>(j) + 1.0) / static_cast<double>(n);
  }
  return t;
}

PumpFamilyReport pump_family(const std::vector<Vec3>& ws, const std::vector<double>& ts,
                             std::size_t L, std::size_t metric_terms) {
  if (ws.empty() || ts.empty()) fail(ErrorCode::InvalidArgument, "pump grid is empty");
  for (std::size_t j = 1; j < ts.size(); ++j) {
    if (!(ts[j] > ts[j - 1])) fail(ErrorCode::InvalidArgument, "pump t-grid must be increasing");
  }
  PumpFamilyReport rep;
  rep.L = L;
  rep.ws = ws;
  rep.ts = ts;
  const std::size_t nw = ws.size();
  const std::size_t nt = ts.size();
  std::vector<std::optional<PumpGround>> grounds(nw * nt);
  parallel_for(nw * nt, [&](std::size_t k) {
    grounds[k] = pump_ground(PumpParams{ws[k / nt], ts[k % nt], L});
  });

  const ObservableFamily fam(LatticeSpec::uniform(L, 2), metric_terms);
  rep.points.resize(nw * nt);
  parallel_for(nw * nt, [&](std::size_t k) {
    const std::size_t i = k / nt;
    const std::size_t j = k % nt;
    PumpPoint& pt = rep.points[k];
    pt.w_index = i;
    pt.t_index = j;
    pt.t = ts[j];
    pt.energy = grounds[k]->energy;
    pt.gap = grounds[k]->gap;
    if (j + 1 < nt) {
      pt.dist_next_t = weakstar_dist(grounds[k]->rho, grounds[k + 1]->rho, fam, metric_terms).value;
    }
    if (nw > 1) {
      const std::size_t kn = ((i + 1) % nw) * nt + j;
      pt.dist_next_w = weakstar_dist(grounds[k]->rho, grounds[kn]->rho, fam, metric_terms).value;
    }
  });
  rep.min_gap = rep.points.front().gap;
  for (const auto& pt : rep.points) {
    rep.min_gap = std::min(rep.min_gap, pt.gap);
    rep.continuity = std::max({rep.continuity, pt.dist_next_t, pt.dist_next_w});
  }

  for (double pole : {1.0, -1.0}) {
    const ComplexMatrix ref = ground_space_projector(pump_hamiltonian(PumpParams{ws[0], pole, L}));
    double dev = 0.0;
    for (std::size_t i = 1; i < nw; ++i) {
      const ComplexMatrix p = ground_space_projector(pump_hamiltonian(PumpParams{ws[i], pole, L}));
      dev = std::max(dev, (p - ref).norm() / std::sqrt(std::max(1.0, ref.trace().real())));
    }
    (pole > 0 ? rep.pole_plus : rep.pole_minus) = dev;
  }
  return rep;
}

// Free fermions --------------------------------------------------------------

namespace {

void check_gapped(const RealVector& ev) {
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (!(std::abs(ev(i)) >= kAdmissibleTol)) {
      fail(ErrorCode::NotGapped, "matrix has eigenvalue " + std::to_string(ev(i)) + " near 0");
    }
  }
}

}  // namespace

ComplexMatrix flatten(const ComplexMatrix& a, double t) {
  if (!(t >= 0.0 && t <= 1.0)) fail(ErrorCode::InvalidArgument, "flatten parameter outside [0, 1]");
  if (a.size() == 0) return a;
  check_gapped(eigenvalues(a));
  if (t == 0.0) return a;
  return matfun(a, [t](double x) { return x / std::pow(std::abs(x), t); });
}

std::size_t neg_index(const ComplexMatrix& a) {
  if (a.size() == 0) return 0;
  const RealVector ev = eigenvalues(a);
  check_gapped(ev);
  return static_cast<std::size_t>((ev.array() < 0.0).count());
}

ComplexMatrix block_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    fail(ErrorCode::DimMismatch, "block_sum needs square blocks");
  }
  return block_diag(a, b);
}

}  // namespace statespace
