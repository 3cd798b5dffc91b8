#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "statespace/lattice.hpp"
#include "statespace/linalg.hpp"
#include "statespace/random.hpp"
#include "statespace/states.hpp"

namespace statespace {

struct HomotopyConfig {
  double delta_P = 1e-6;
  double delta_pure = 1e-6;
  double eps_edge = 1e-8;
  double delta_edge = 1e-8;
  double theta_step = 0.2;
  double eta_step = 0.5;
  double tau_ideal = kGelfandTol;
  std::size_t depth_cap = 20;
  std::size_t stage_samples = 9;  // s-samples per stage, both ends included
  std::size_t max_restarts = 64;
};

inline constexpr double kLoopTol = 1e-9;

/// A path of states sampled at 0 = t_0 < ... < t_{N-1} = 1.
class SampledPath {
 public:
  /// InvalidArgument unless N >= 2, params strictly increase from 0 to 1 and
  /// all states share a dimension; a loop must also close to kLoopTol.
  SampledPath(std::vector<double> params, std::vector<DensityMatrix> states, bool loop);

  const std::vector<double>& params() const noexcept { return params_; }
  const std::vector<DensityMatrix>& states() const noexcept { return states_; }
  const DensityMatrix& state(std::size_t i) const { return states_.at(i); }
  std::size_t size() const noexcept { return params_.size(); }
  std::size_t dim() const noexcept { return states_.front().dim(); }
  bool is_loop() const noexcept { return loop_; }

  /// Piecewise-linear interpolation; convex combinations stay states.
  DensityMatrix at(double t) const;
  /// Same path sampled at new parameters (which must start at 0, end at 1).
  SampledPath resampled(const std::vector<double>& params) const;

 private:
  std::vector<double> params_;
  std::vector<DensityMatrix> states_;
  bool loop_;
};

/// Loop at |e_0><e_0| of dimension n that stays put.
SampledPath constant_loop(std::size_t n, std::size_t samples);
/// Pure qubit loop cos(pi t)|e_0> + sin(pi t)|e_1>, through |e_1> at t = 1/2.
SampledPath great_circle_loop(std::size_t samples);
/// Smooth random loop at |e_0><e_0|: conjugation by exp(i(sin(2 pi t) H_1 +
/// (1 - cos(2 pi t)) H_2)) with unit-norm random H_i, then mixing with a
/// random full-rank state at weight mixing * sin^2(pi t). Endpoints are the
/// basepoint exactly.
SampledPath random_loop(Rng& rng, std::size_t n, std::size_t samples, double mixing);
std::vector<double> uniform_params(std::size_t samples);

struct HomotopyGrid {
  std::vector<double> t_params;
  std::vector<double> s_params;
  std::vector<std::vector<DensityMatrix>> states;  // [t][s]
  std::vector<std::vector<ComplexMatrix>> lift;    // [t][s]
  bool final_column_exempt = false;
  /// Column index at which each stage ends; the first stage starts at 0.
  std::vector<std::size_t> stage_ends;
  std::vector<std::string> stage_labels;

  std::size_t t_count() const noexcept { return t_params.size(); }
  std::size_t s_count() const noexcept { return s_params.size(); }
  std::size_t dim() const { return states.at(0).at(0).dim(); }
};

struct PhasePath {
  std::vector<double> params;
  std::vector<Complex> phases;
  std::vector<Complex> gamma;  // the input path at params (refined by interpolation)
};

/// Chooses unit phases lambda along a sampled path gamma in the closed disk
/// so that lambda gamma = 1 wherever |gamma| >= 1 - delta_edge. Intervals on
/// which the phase jumps by more than theta_step are bisected, interpolating
/// gamma linearly; RefinementExhausted beyond depth_cap bisections.
PhasePath phase_lift(std::span<const double> params, std::span<const Complex> gamma,
                     const HomotopyConfig& cfg = {});

/// Largest violation of the phase-lift postcondition: edge deviation
/// |lambda gamma - 1| beyond eps_edge, phase steps beyond theta_step and
/// departures from |lambda| = 1 (0 when everything holds).
double phase_lift_violation(const PhasePath& p, const HomotopyConfig& cfg = {});

struct UnitaryLift {
  SampledPath path;  // the input loop, refined where needed
  std::vector<ComplexMatrix> unitaries;
};

/// Unitaries U_t along a loop at |e_0><e_0| with U_0 = 1 and every U_t . w_t
/// giving the corner projector P^n_1 weight at least 1/8. The top
/// eigenvector of each state is rotated toward e_0 by the least angle that
/// keeps it within (1 - w) pi/2 of e_0, w ramping from 0 to 1 as the top
/// eigenvalue goes from 5/8 to 7/8.
UnitaryLift unitary_lift(const SampledPath& loop, const HomotopyConfig& cfg = {});

/// min_t (U_t . w_t)(P^n_1) (the postcondition margin).
double unitary_lift_margin(const SampledPath& loop, std::span<const ComplexMatrix> unitaries);

std::vector<double> stage_s_params(const HomotopyConfig& cfg);

/// Lift s lambda_t U_t + (1 - s) 1 acting on the loop.
HomotopyGrid interp_unitary_homotopy(const SampledPath& loop, std::span<const ComplexMatrix> u,
                                     const PhasePath& lambda, const HomotopyConfig& cfg = {});

/// Lift s P + (1 - s) 1 acting on the path. GelfandIdeal if some sample has
/// rho(P) <= delta_P.
HomotopyGrid project_homotopy(const SampledPath& path, const ComplexMatrix& p,
                              const HomotopyConfig& cfg = {});

/// Null-homotopy of a loop in S(M_n) based at |e_0><e_0|, assembled from a
/// unitary stage and a projection stage per corner level.
HomotopyGrid contract_loop_matrix(const SampledPath& loop, const HomotopyConfig& cfg = {});

struct SiteStage {
  std::size_t site = 0;
  HomotopyGrid local;               // contraction of the site marginal
  double factorization_residual = 0.0;
  double marginal_deviation = 0.0;  // max over t and sites j <= site
};

struct DisentangleResult {
  HomotopyGrid grid;
  std::vector<SiteStage> stages;
  double max_factorization_residual = 0.0;
};

inline constexpr double kFactorizationTol = 1e-7;
inline constexpr double kFactorizationFailure = 1e-5;

/// Site-by-site contraction of a loop on a product lattice, based at the
/// product of |e_0><e_0|.
DisentangleResult disentangle_loop(const SampledPath& loop, const LatticeSpec& spec,
                                   const HomotopyConfig& cfg = {});

/// sup |psi(ab) - psi(a) psi(b)| with b running over the Gell-Mann basis of
/// the site and a over Gell-Mann products on the other sites.
double factorization_residual(const DensityMatrix& psi, const LatticeSpec& spec, std::size_t site);

struct Deviation {
  double value = 0.0;
  std::size_t t = 0;
  std::size_t s = 0;
};

struct VerifyOptions {
  double tol = 1e-6;
  double continuity_tol = 0.5;
  std::size_t metric_terms = 32;
  std::optional<SampledPath> input;
  std::optional<DensityMatrix> target;  // default: the basepoint states[0][0]
  std::optional<LatticeSpec> spec;      // default: one site of dimension n
};

struct VerifyReport {
  Deviation s0_lift;
  Deviation s0_column;
  Deviation lift_consistency;
  Deviation boundary;
  Deviation final_column;
  Deviation continuity;
  bool pass = false;
};

VerifyReport verify_homotopy(const HomotopyGrid& grid, const VerifyOptions& opts = {});

struct CellDeviation {
  std::size_t t_index = 0;
  std::size_t s_index = 0;
  double consistency = 0.0;  // ||states - act(lift, column 0)||_F
  double target_distance = 0.0;
  double purity = 0.0;
};

std::vector<CellDeviation> cell_deviations(const HomotopyGrid& grid,
                                           const std::optional<DensityMatrix>& target = {});

}  // namespace statespace
