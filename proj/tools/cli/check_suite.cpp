#include "check_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "statespace/algebra.hpp"
#include "statespace/error.hpp"
#include "statespace/homotopy.hpp"
#include "statespace/linalg.hpp"
#include "statespace/metric.hpp"
#include "statespace/models.hpp"
#include "statespace/phases.hpp"
#include "statespace/random.hpp"
#include "statespace/states.hpp"

namespace statespace::cli {

namespace {

using Probe = std::function<double(Rng&)>;

struct Property {
  const char* name;
  double tol;
  Probe probe;
};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

DensityMatrix random_state(Rng& rng, std::size_t n) {
  return DensityMatrix::trusted(random_density_matrix(rng, n));
}

double action_identity(Rng& rng) {
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 2 + rng.index(7);
    const auto rho = random_state(rng, n);
    worst = std::max(worst, max_abs_diff(act(identity(n), rho).matrix(), rho.matrix()));
  }
  return worst;
}

double action_composition(Rng& rng) {
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 2 + rng.index(7);
    const auto rho = random_state(rng, n);
    const ComplexMatrix a = random_ginibre(rng, n, n);
    const ComplexMatrix b = random_ginibre(rng, n, n);
    worst = std::max(worst, max_abs_diff(act(a * b, rho).matrix(), act(a, act(b, rho)).matrix()));
  }
  return worst;
}

double action_purity(Rng& rng) {
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 2 + rng.index(7);
    const auto rho = DensityMatrix::trusted(random_pure_density(rng, n));
    worst = std::max(worst, std::abs(1.0 - act(random_ginibre(rng, n, n), rho).purity()));
  }
  return worst;
}

double unitary_interp_degenerate(Rng&) {
  ComplexMatrix u = identity(2);
  u(1, 1) = -1.0;
  const auto rho = DensityMatrix::basis_state(2, 1);
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double s = i / 100.0;
    const double norm = action_norm(s * u + (1.0 - s) * identity(2), rho);
    worst = std::max(worst, std::abs(norm - (1.0 - 2.0 * s) * (1.0 - 2.0 * s)));
  }
  return worst;
}

double projection_interp_positivity(Rng& rng) {
  double worst = 0.0;
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = 2 + rng.index(5);
    const std::size_t r = 1 + rng.index(n - 1);
    const ComplexMatrix v = random_isometry_matrix(rng, n, r);
    const ComplexMatrix p = v * v.adjoint();
    const auto rho = random_state(rng, n);
    for (int i = 0; i <= 20; ++i) {
      const double s = i / 20.0;
      const ComplexMatrix a = s * p + (1.0 - s) * identity(n);
      worst = std::max(worst, std::max(0.0, -min_eigenvalue(act(a, rho).matrix())));
    }
  }
  return worst;
}

double phase_lift_circle(Rng&) {
  const auto params = uniform_params(256);
  std::vector<Complex> gamma;
  for (double t : params) gamma.push_back(std::polar(1.0, 2.0 * std::numbers::pi * t));
  const auto lift = phase_lift(params, gamma);
  double worst = 0.0;
  for (std::size_t i = 0; i < lift.params.size(); ++i) {
    worst = std::max(worst, std::abs(lift.phases[i] * lift.gamma[i] - 1.0));
  }
  return worst;
}

double phase_lift_disk(Rng& rng) {
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto params = uniform_params(64);
    const double r0 = rng.uniform(), r1 = rng.uniform(0.5, 1.5), w = rng.uniform(1.0, 4.0);
    const double ph = rng.uniform(0.0, 2.0 * std::numbers::pi);
    std::vector<Complex> gamma;
    for (double t : params) {
      const double r = std::min(1.0, r0 + r1 * std::sin(std::numbers::pi * t));
      gamma.push_back(std::polar(r, ph + 2.0 * std::numbers::pi * w * t));
    }
    worst = std::max(worst, phase_lift_violation(phase_lift(params, gamma)));
  }
  return worst;
}

double contract_circle(Rng&) {
  const auto loop = great_circle_loop(60);
  VerifyOptions opts;
  opts.input = loop;
  const auto report = verify_homotopy(contract_loop_matrix(loop), opts);
  return report.pass ? report.final_column.value : 1.0;
}

double contract_random(Rng& rng) {
  double worst = 0.0;
  for (int k = 0; k < 2; ++k) {
    const auto loop = random_loop(rng, 3, 24, 0.5);
    VerifyOptions opts;
    opts.input = loop;
    const auto report = verify_homotopy(contract_loop_matrix(loop), opts);
    worst = std::max(worst, report.pass ? report.final_column.value : 1.0);
  }
  return worst;
}

double disentangle_pair(Rng& rng) {
  const LatticeSpec spec({2, 2});
  const auto loop = random_loop(rng, 4, 24, 0.3);
  const auto result = disentangle_loop(loop, spec);
  VerifyOptions opts;
  opts.input = loop;
  opts.spec = spec;
  if (!verify_homotopy(result.grid, opts).pass) return 1.0;
  return result.max_factorization_residual;
}

double pump_decoupled_gap(Rng&) {
  double worst = 0.0;
  for (double t : {0.0, 1.0}) {
    for (const auto& w : octahedron_points()) {
      worst = std::max(worst, std::abs(pump_ground(PumpParams{w, t, 2}).gap - 2.0));
    }
  }
  return worst;
}

double chern_ground(Rng&) {
  const auto c = chern_number(berry_bundle(16, 16, 0));
  return c.chern == -1 ? c.residual : 1.0;
}

double flatten_involution(Rng& rng) {
  double worst = 0.0;
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = 1 + rng.index(8);
    const ComplexMatrix h = random_hermitian(rng, n);
    const auto eig = herm_eig(h);
    if (eig.values.cwiseAbs().minCoeff() < 1e-3) continue;
    const ComplexMatrix f = flatten(h, 1.0);
    worst = std::max(worst, max_abs_diff(f * f, identity(n)));
    if (neg_index(flatten(h, 0.5)) != neg_index(h)) return 1.0;
  }
  return worst;
}

double k0_examples(Rng&) {
  const PresentedMonoid n0{1, {}};
  const PresentedMonoid z2{1, {{Exponents{2}, Exponents{0}}}};
  bool ok = k0(n0).to_string() == "Z";
  ok = ok && k0(localize(n0, Exponents{1})).to_string() == "Z";
  ok = ok && k0(z2).to_string() == "Z/2";
  return ok ? 0.0 : 1.0;
}

Isometry random_iso(Rng& rng, std::size_t out, std::size_t in) {
  return Isometry(random_isometry_matrix(rng, out, in));
}

double operad_laws(Rng& rng) {
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Isometry c = random_iso(rng, 12, 12);
    const std::vector<Isometry> ds{random_iso(rng, 3, 2), random_iso(rng, 4, 4)};
    const std::vector<Isometry> es{random_iso(rng, 2, 2), random_iso(rng, 2, 2), random_iso(rng, 2, 2)};
    const std::vector<std::size_t> arities{1, 2};
    worst = std::max(worst, operad_associativity_residual(c, ds, es, arities));

    const std::vector<Isometry> fs{random_iso(rng, 3, 2), random_iso(rng, 2, 2)};
    const std::vector<std::size_t> swap{1, 0};
    worst = std::max(worst, operad_equivariance_residual(random_iso(rng, 6, 6), fs, swap));

    const std::vector<Isometry> gs{random_iso(rng, 4, 4), random_iso(rng, 3, 3)};
    const std::vector<DensityMatrix> states{random_state(rng, 2), random_state(rng, 2),
                                            random_state(rng, 3)};
    const std::vector<std::size_t> theta_arities{2, 1};
    worst = std::max(worst, theta_compatibility_residual(random_iso(rng, 12, 12), gs, states, theta_arities));
  }
  return worst;
}

double naturality(Rng& rng) {
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Isometry f1 = random_iso(rng, 3, 2);
    const Isometry f2 = random_iso(rng, 2, 2);
    worst = std::max(worst, naturality_residual(f1, f2, random_state(rng, 4), random_state(rng, 4), 2));
  }
  return worst;
}

double metric_triangle(Rng& rng) {
  const LatticeSpec spec({2, 2});
  const ObservableFamily fam(spec, 64);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto a = random_state(rng, 4), b = random_state(rng, 4), c = random_state(rng, 4);
    const double ac = weakstar_dist(a, c, fam, 64).value;
    const double ab = weakstar_dist(a, b, fam, 64).value;
    const double bc = weakstar_dist(b, c, fam, 64).value;
    worst = std::max(worst, ac - ab - bc);
  }
  return std::max(worst, 0.0);
}

double metric_tail(Rng& rng) {
  const LatticeSpec spec({2, 2, 2});
  const ObservableFamily fam(spec, 64);
  double worst = -1.0;
  for (int k = 0; k < 20; ++k) {
    const auto a = random_state(rng, 8), b = random_state(rng, 8);
    const double full = weakstar_dist(a, b, fam, 64).value;
    for (std::size_t K : {8u, 12u, 16u}) {
      const double gap = std::abs(full - weakstar_dist(a, b, fam, K).value);
      worst = std::max(worst, gap - std::ldexp(1.0, -static_cast<int>(K)));
    }
  }
  return std::max(worst, 0.0);
}

}  // namespace

std::vector<CheckResult> run_check_suite(std::uint64_t seed) {
  const std::vector<Property> props{
      {"action.identity", 0.0, action_identity},
      {"action.composition", 1e-10, action_composition},
      {"action.purity", 1e-9, action_purity},
      {"homotopy.unitary_interp_degenerate", 1e-12, unitary_interp_degenerate},
      {"homotopy.projection_interp_positive", 1e-12, projection_interp_positivity},
      {"phase_lift.circle", 1e-8, phase_lift_circle},
      {"phase_lift.disk_paths", 0.0, phase_lift_disk},
      {"contract.great_circle", 1e-6, contract_circle},
      {"contract.random_qutrit_loops", 1e-6, contract_random},
      {"disentangle.two_qubits", kFactorizationTol, disentangle_pair},
      {"pump.decoupled_gap", 1e-9, pump_decoupled_gap},
      {"chern.ground_band", 0.05, chern_ground},
      {"flatten.involution", 1e-9, flatten_involution},
      {"k0.examples", 0.0, k0_examples},
      {"operad.laws", 1e-10, operad_laws},
      {"operad.naturality", 1e-10, naturality},
      {"metric.triangle", 1e-12, metric_triangle},
      {"metric.tail_bound", 0.0, metric_tail},
  };
  std::vector<CheckResult> out;
  for (std::size_t i = 0; i < props.size(); ++i) {
    Rng rng(seed + i);
    CheckResult r{props[i].name, 0.0, props[i].tol, false, {}};
    try {
      r.value = props[i].probe(rng);
      r.pass = r.value <= r.tol;
    } catch (const Error& e) {
      r.value = std::numeric_limits<double>::infinity();
      r.note = std::string(to_string(e.code())) + ": " + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace statespace::cli
