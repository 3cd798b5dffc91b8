// Acceptance suite: one line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "statespace/algebra.hpp"
#include "statespace/error.hpp"
#include "statespace/homotopy.hpp"
#include "statespace/linalg.hpp"
#include "statespace/metric.hpp"
#include "statespace/models.hpp"
#include "statespace/phases.hpp"
#include "statespace/random.hpp"
#include "statespace/states.hpp"

using namespace statespace;

namespace tol {
// 1
constexpr double kCompose = 1e-10;
constexpr double kPurity = 1e-9;
constexpr double kActionSeconds = 10.0;
// 2
constexpr double kDegenerate = 1e-12;
// 3
constexpr double kEdge = 1e-8;
constexpr double kPhaseSeconds = 5.0;
// 4
constexpr double kFinalColumn = 1e-6;
constexpr double kVerify = 1e-6;
constexpr double kContractSeconds = 30.0;
// 5
constexpr double kFactorization = 1e-7;
constexpr double kDisentangleSeconds = 300.0;
// 6
constexpr double kMinGap = 0.1;
constexpr double kPinnedMinGap = 0.571300;  // measured on the 6 x 24 grid at L = 8
constexpr double kPinnedGapTol = 1e-4;
constexpr double kPole = 1e-8;
constexpr double kDecoupledGap = 1e-9;
constexpr double kPumpSeconds = 120.0;
// 7
constexpr double kChernResidual = 0.05;
constexpr double kChernOracle = 0.05;
constexpr double kGauge = 1e-10;
constexpr double kChernSeconds = 10.0;
// 8
constexpr double kInvolution = 1e-9;
// 9
constexpr double kK0Seconds = 1.0;
// 10
constexpr double kOperad = 1e-10;
constexpr double kOperadSeconds = 30.0;
// 11
constexpr double kTriangle = 1e-12;
}  // namespace tol

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

DensityMatrix random_state(Rng& rng, std::size_t n) { return DensityMatrix::trusted(random_density_matrix(rng, n)); }

Isometry random_iso(Rng& rng, std::size_t out, std::size_t in) {
  return Isometry(random_isometry_matrix(rng, out, in));
}

Verdict action_axioms(double& summary) {
  Verdict v;
  Rng rng(1001);
  bool exact = true;
  double compose = 0.0, purity = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 2 + rng.index(7);
    const auto rho = random_state(rng, n);
    const auto pure = DensityMatrix::trusted(random_pure_density(rng, n));
    const ComplexMatrix a = random_ginibre(rng, n, n), b = random_ginibre(rng, n, n);
    exact = exact && act(identity(n), rho).matrix() == rho.matrix();
    compose = std::max(compose, max_abs(act(a * b, rho).matrix() - act(a, act(b, rho)).matrix()));
    purity = std::max(purity, std::abs(act(a, pure).purity() - 1.0));
  }
  v.require(exact, "unit action not exact");
  v.require(compose <= tol::kCompose, "composition " + fmt("%.2e", compose));
  v.require(purity <= tol::kPurity, "purity " + fmt("%.2e", purity));
  summary = std::max(compose, purity);
  return v;
}

Verdict interpolation_instances(double& summary) {
  Verdict v;
  ComplexMatrix u = identity(2);
  u(1, 1) = -1.0;
  const auto rho = DensityMatrix::basis_state(2, 1);
  bool only_half = true;
  for (int i = 0; i <= 1000; ++i) {
    const double s = i / 1000.0;
    const double norm = action_norm(s * u + (1 - s) * identity(2), rho);
    const bool vanishes = norm <= tol::kDegenerate;
    only_half = only_half && (vanishes == (i == 500));
  }
  v.require(only_half, "unitary interpolant vanishes away from s = 1/2");
  Rng rng(1002);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + rng.index(6);
    const ComplexMatrix w = random_isometry_matrix(rng, n, 1 + rng.index(n - 1));
    const ComplexMatrix p = w * w.adjoint();
    const auto r = random_state(rng, n);
    if (trace(p * r.matrix()).real() <= 0.0) continue;
    for (int i = 0; i < 200; ++i) {
      const double s = i / 199.0;
      const ComplexMatrix a = s * p + (1 - s) * identity(n);
      const double norm = action_norm(a, r);
      if (!(norm > 0.0)) v.require(false, "projection interpolant hits the ideal");
      worst = std::max(worst, -min_eigenvalue(act(a, r).matrix()));
    }
  }
  summary = std::max(worst, 0.0);
  return v;
}

Verdict phase_lift_criterion(double& summary) {
  Verdict v;
  const auto params = uniform_params(256);
  std::vector<Complex> gamma;
  for (double t : params) gamma.push_back(std::polar(1.0, 2.0 * std::numbers::pi * t));
  const auto p = phase_lift(params, gamma);
  double edge = 0.0;
  for (std::size_t i = 0; i < p.params.size(); ++i) {
    edge = std::max(edge, std::abs(p.phases[i] * p.gamma[i] - 1.0));
    edge = std::max(edge, std::abs(p.phases[i] - std::abs(p.gamma[i]) / p.gamma[i]));
  }
  v.require(edge <= tol::kEdge, "circle " + fmt("%.2e", edge));
  Rng rng(1003);
  double viol = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto ps = uniform_params(64);
    std::vector<Complex> g;
    Complex z(0.0, 0.0);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      z += 0.3 * rng.complex_normal();
      if (std::abs(z) > 1.0) z /= std::abs(z);
      g.push_back(z);
    }
    const auto lift = phase_lift(ps, g);
    viol = std::max(viol, phase_lift_violation(lift));
    for (std::size_t i = 0; i < lift.params.size(); ++i) {
      if (std::abs(lift.gamma[i]) >= 1.0 - 1e-8) viol = std::max(viol, std::abs(lift.phases[i] * lift.gamma[i] - 1.0) - tol::kEdge);
    }
  }
  v.require(viol <= 0.0, "random disk paths violate " + fmt("%.2e", viol));
  summary = edge;
  return v;
}

Verdict contraction_criterion(double& summary) {
  Verdict v;
  const auto loop = great_circle_loop(200);
  const auto g = contract_loop_matrix(loop);
  VerifyOptions o;
  o.tol = tol::kVerify;
  o.input = loop;
  const auto rep = verify_homotopy(g, o);
  v.require(rep.pass, "verify_homotopy failed");
  v.require(rep.final_column.value <= tol::kFinalColumn, "final column " + fmt("%.2e", rep.final_column.value));
  // Bloch oracle: the final column sits at the north pole
  double bloch = 0.0;
  for (const auto& row : g.states)
    bloch = std::max(bloch, (oracle::bloch(row.back().matrix()) - Eigen::Vector3d(0, 0, 1)).norm());
  v.require(bloch <= tol::kFinalColumn, "Bloch endpoint " + fmt("%.2e", bloch));
  summary = rep.final_column.value;
  return v;
}

Verdict disentangle_criterion(double& summary) {
  Verdict v;
  const LatticeSpec spec({2, 2, 2});
  Rng rng(1005);
  double worst = 0.0;
  int failed = 0;
  for (int k = 0; k < 50; ++k) {
    const auto loop = random_loop(rng, 8, 32, 0.3);
    const auto res = disentangle_loop(loop, spec);
    VerifyOptions o;
    o.input = loop;
    o.spec = spec;
    if (!verify_homotopy(res.grid, o).pass) ++failed;
    worst = std::max(worst, res.max_factorization_residual);
  }
  v.require(failed == 0, std::to_string(failed) + " loops failed verification");
  v.require(worst <= tol::kFactorization, "factorization " + fmt("%.2e", worst));
  summary = worst;
  return v;
}

Verdict pump_criterion(double& summary) {
  Verdict v;
  const auto rep = pump_family(octahedron_points(), pump_t_grid(24), 8);
  v.require(rep.points.size() == 6 * 24, "grid size");
  v.require(rep.min_gap > tol::kMinGap, "min gap " + fmt("%.4f", rep.min_gap));
  v.require(std::abs(rep.min_gap - tol::kPinnedMinGap) <= tol::kPinnedGapTol,
            "min gap " + fmt("%.6f", rep.min_gap) + " moved from the pinned value");
  v.require(rep.pole_plus <= tol::kPole && rep.pole_minus <= tol::kPole,
            "poles " + fmt("%.2e", std::max(rep.pole_plus, rep.pole_minus)));
  for (double t : {0.0, 1.0}) {
    const double gap = pump_ground(PumpParams{{0, 0, 1}, t, 2}).gap;
    v.require(std::abs(gap - 2.0) <= tol::kDecoupledGap, "decoupled gap at t = " + fmt("%g", t) + ": " + fmt("%.12f", gap));
  }
  summary = rep.min_gap;
  return v;
}

Verdict chern_criterion(double& summary) {
  Verdict v;
  const auto bundle = berry_bundle(24, 24, 0);
  const auto c = chern_number(bundle);
  v.require(std::abs(c.chern) == 1, "|C| = " + std::to_string(std::abs(c.chern)));
  v.require(c.residual < tol::kChernResidual, "residual " + fmt("%.3f", c.residual));
  const double ref = oracle::curvature_chern(oracle::lower_band, 48);
  v.require(std::abs(c.raw - ref) <= tol::kChernOracle, "oracle " + fmt("%.4f", ref));
  Rng rng(1007);
  auto frames = frames_from_bundle(bundle);
  const auto base = chern_number_frames(frames);
  auto twist = [&](ComplexVector& x) { x *= std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi)); };
  twist(frames.north);
  twist(frames.south);
  for (auto& row : frames.rows)
    for (auto& x : row) twist(x);
  const auto moved = chern_number_frames(frames);
  v.require(moved.chern == base.chern && std::abs(moved.flux_sum - base.flux_sum) <= tol::kGauge, "gauge dependence");
  summary = static_cast<double>(c.chern);
  return v;
}

Verdict flatten_criterion(double& summary) {
  Verdict v;
  Rng rng(1008);
  double worst = 0.0;
  int made = 0;
  while (made < 100) {
    const std::size_t n = 1 + rng.index(16);
    const ComplexMatrix a = random_hermitian(rng, n);
    if (herm_eig(a).values.cwiseAbs().minCoeff() < 1e-3) continue;
    ++made;
    const RealVector sp = eigenvalues(flatten(a, 1.0));
    for (Eigen::Index i = 0; i < sp.size(); ++i) worst = std::max(worst, std::abs(std::abs(sp(i)) - 1.0));
    const std::size_t idx = neg_index(a);
    for (int i = 0; i <= 20; ++i) {
      if (neg_index(flatten(a, i / 20.0)) != idx) v.require(false, "neg_index changes along the path");
    }
    const ComplexMatrix b = random_hermitian(rng, 1 + rng.index(8));
    if (neg_index(block_sum(a, b)) != idx + neg_index(b)) v.require(false, "block_sum not additive");
  }
  v.require(worst <= tol::kInvolution, "spectrum " + fmt("%.2e", worst));
  summary = worst;
  return v;
}

Verdict k0_criterion(double& summary) {
  Verdict v;
  const PresentedMonoid n0{1, {}};
  v.require(k0(n0).to_string() == "Z", "K0(N0)");
  v.require(k0(localize(n0, Exponents{1})).to_string() == "Z", "localized N0");
  v.require(k0(PresentedMonoid{1, {{Exponents{2}, Exponents{0}}}}).to_string() == "Z/2", "Z/2 example");
  Rng rng(1009);
  for (int k = 0; k < 100; ++k) {
    PresentedMonoid m;
    m.n_gens = 1 + rng.index(3);
    for (std::size_t r = rng.index(4); r > 0; --r) {
      Exponents a(m.n_gens), b(m.n_gens);
      for (auto& x : a) x = rng.index(4);
      for (auto& x : b) x = rng.index(4);
      m.relations.emplace_back(a, b);
    }
    const auto base = k0(m);
    PresentedMonoid rev = m;
    for (auto& [a, b] : rev.relations) {
      std::reverse(a.begin(), a.end());
      std::reverse(b.begin(), b.end());
    }
    PresentedMonoid red = m;
    red.relations.emplace_back(Exponents(m.n_gens, 1), Exponents(m.n_gens, 1));
    PresentedMonoid shift = m;
    if (!m.relations.empty()) {
      auto [a, b] = m.relations.front();
      for (std::size_t i = 0; i < m.n_gens; ++i) {
        a[i] += 2;
        b[i] += 2;
      }
      shift.relations.emplace_back(a, b);
    }
    if (!(k0(rev) == base && k0(red) == base && k0(shift) == base)) {
      v.require(false, "presentation move changed K0");
      break;
    }
  }
  summary = 0.0;
  return v;
}

Verdict operad_criterion(double& summary) {
  Verdict v;
  Rng rng(1010);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const std::vector<Isometry> es{random_iso(rng, 2, 1 + rng.index(2)), random_iso(rng, 3, 2), random_iso(rng, 2, 2)};
    const std::vector<Isometry> ds{random_iso(rng, 3, 2), random_iso(rng, 7, 6)};
    const std::vector<std::size_t> arities{1, 2};
    worst = std::max(worst, operad_associativity_residual(random_iso(rng, 21, 21), ds, es, arities));
    const std::vector<Isometry> fs{random_iso(rng, 2, 2), random_iso(rng, 3, 2), random_iso(rng, 2, 1)};
    const std::vector<std::size_t> cyc{1, 2, 0};
    worst = std::max(worst, operad_equivariance_residual(random_iso(rng, 12, 12), fs, cyc));
    const std::vector<Isometry> gs{random_iso(rng, 4, 4), random_iso(rng, 3, 2)};
    const std::vector<DensityMatrix> st{random_state(rng, 2), random_state(rng, 2), random_state(rng, 2)};
    const std::vector<std::size_t> theta_arities{2, 1};
    worst = std::max(worst, theta_compatibility_residual(random_iso(rng, 12, 12), gs, st, theta_arities));
    worst = std::max(worst, naturality_residual(random_iso(rng, 3, 2), random_iso(rng, 3, 2), random_state(rng, 4),
                                                random_state(rng, 4), 2));
  }
  v.require(worst <= tol::kOperad, "residual " + fmt("%.2e", worst));
  summary = worst;
  return v;
}

Verdict metric_criterion(double& summary) {
  Verdict v;
  const LatticeSpec spec({2, 2, 2});
  const ObservableFamily fam(spec, 63);
  Rng rng(1011);
  double tail = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto a = random_state(rng, 8), b = random_state(rng, 8);
    const double full = weakstar_dist(a, b, fam, fam.size()).value;
    for (std::size_t K : {8u, 12u, 16u}) {
      const double d = weakstar_dist(a, b, fam, K).value;
      tail = std::max(tail, std::abs(full - d) - std::ldexp(1.0, -static_cast<int>(K)));
      const double d2 = weakstar_dist(a, b, fam, K + 4).value;
      tail = std::max(tail, std::abs(d2 - d) - std::ldexp(1.0, -static_cast<int>(K)));
    }
  }
  v.require(tail <= 0.0, "tail bound exceeded by " + fmt("%.2e", tail));
  const ObservableFamily small(LatticeSpec({2, 2}), 15);
  double tri = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto a = random_state(rng, 4), b = random_state(rng, 4), c = random_state(rng, 4);
    tri = std::max(tri, weakstar_dist(a, c, small, 15).value - weakstar_dist(a, b, small, 15).value -
                            weakstar_dist(b, c, small, 15).value);
  }
  v.require(tri <= tol::kTriangle, "triangle " + fmt("%.2e", tri));
  summary = std::max(tri, 0.0);
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double seconds;  // runtime limit, 0 for none
  std::function<Verdict(double&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "action axioms on 1000 random instances", tol::kActionSeconds, action_axioms},
      {2, "interpolation instances (degenerate unitary, projection positivity)", 0.0, interpolation_instances},
      {3, "phase lift on the circle and random disk paths", tol::kPhaseSeconds, phase_lift_criterion},
      {4, "great-circle qubit loop contraction (N = 200)", tol::kContractSeconds, contraction_criterion},
      {5, "disentangling 50 random loops on [2,2,2]", tol::kDisentangleSeconds, disentangle_criterion},
      {6, "pump family L = 8 on 6 x 24 grid", tol::kPumpSeconds, pump_criterion},
      {7, "Chern number on a 24 x 24 sphere grid", tol::kChernSeconds, chern_criterion},
      {8, "spectral flattening of 100 gapped matrices", 0.0, flatten_criterion},
      {9, "K0 examples and presentation moves", tol::kK0Seconds, k0_criterion},
      {10, "operad laws and naturality over 200 instances", tol::kOperadSeconds, operad_criterion},
      {11, "metric tail bound and triangle inequality", 0.0, metric_criterion},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    double summary = 0.0;
    try {
      v = c.run(summary);
    } catch (const Error& e) {
      v.require(false, std::string(to_string(e.code())) + ": " + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.seconds > 0.0 && secs > c.seconds) v.require(false, "runtime " + fmt("%.1f s", secs) + " over limit");
    if (!v.pass) ++failures;
    std::printf("[%s] criterion %2d: %-68s value=%-11.4g time=%7.2fs%s%s\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                summary, secs, v.detail.empty() ? "" : "  ", v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
