#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "homotopy_internal.hpp"
#include "statespace/error.hpp"

namespace statespace {

std::vector<double> stage_s_params(const HomotopyConfig& cfg) {
  return uniform_params(std::max<std::size_t>(2, cfg.stage_samples));
}

namespace {

HomotopyGrid empty_grid(const SampledPath& path, const std::vector<double>& s) {
  HomotopyGrid g;
  g.t_params = path.params();
  g.s_params = s;
  g.states.resize(path.size());
  g.lift.resize(path.size());
  return g;
}

}  // namespace

HomotopyGrid interp_unitary_homotopy(const SampledPath& loop, std::span<const ComplexMatrix> u,
                                     const PhasePath& lambda, const HomotopyConfig& cfg) {
  if (u.size() != loop.size() || lambda.phases.size() != loop.size()) {
    fail(ErrorCode::DimMismatch, "need one unitary and one phase per sample");
  }
  const std::size_t n = loop.dim();
  const auto s = stage_s_params(cfg);
  HomotopyGrid g = empty_grid(loop, s);
  const ComplexMatrix one = identity(n);
  for (std::size_t t = 0; t < loop.size(); ++t) {
    if (static_cast<std::size_t>(u[t].rows()) != n) {
      fail(ErrorCode::DimMismatch, "unitary does not match state dimension");
    }
    const ComplexMatrix lu = lambda.phases[t] * u[t];
    for (std::size_t r = 0; r < s.size(); ++r) {
      if (r == 0) {
        g.lift[t].push_back(one);
        g.states[t].push_back(loop.state(t));
        continue;
      }
      ComplexMatrix a = s[r] * lu + (1.0 - s[r]) * one;
      g.states[t].push_back(act(a, loop.state(t), cfg.tau_ideal));
      g.lift[t].push_back(std::move(a));
    }
  }
  g.stage_ends = {s.size() - 1};
  g.stage_labels = {"unitary"};
  return g;
}

HomotopyGrid project_homotopy(const SampledPath& path, const ComplexMatrix& p,
                              const HomotopyConfig& cfg) {
  const std::size_t n = path.dim();
  if (static_cast<std::size_t>(p.rows()) != n || p.rows() != p.cols()) {
    fail(ErrorCode::DimMismatch, "projector does not match state dimension");
  }
  const auto s = stage_s_params(cfg);
  HomotopyGrid g = empty_grid(path, s);
  const ComplexMatrix one = identity(n);
  for (std::size_t t = 0; t < path.size(); ++t) {
    const double weight = path.state(t).expectation(p).real();
    if (!(weight > cfg.delta_P)) {
      fail(ErrorCode::GelfandIdeal, "projection stage: state gives the projector weight " +
                                        std::to_string(weight) + " at t = " +
                                        std::to_string(path.params()[t]));
    }
    for (std::size_t r = 0; r < s.size(); ++r) {
      if (r == 0) {
        g.lift[t].push_back(one);
        g.states[t].push_back(path.state(t));
        continue;
      }
      ComplexMatrix a = s[r] * p + (1.0 - s[r]) * one;
      g.states[t].push_back(act(a, path.state(t), cfg.tau_ideal));
      g.lift[t].push_back(std::move(a));
    }
  }
  g.stage_ends = {s.size() - 1};
  g.stage_labels = {"project"};
  return g;
}

namespace detail {

ComplexMatrix normalized_lift(const ComplexMatrix& l, const DensityMatrix& rho) {
  const double norm = action_norm(l, rho);
  if (!(norm > 0.0)) fail(ErrorCode::GelfandIdeal, "composite lift annihilates the state");
  return l / std::sqrt(norm);
}

std::vector<double> merge_params(const std::vector<double>& original,
                                 const std::vector<double>& current,
                                 const std::vector<double>& requested, const HomotopyConfig& cfg) {
  std::set<double> all(current.begin(), current.end());
  all.insert(requested.begin(), requested.end());
  std::vector<double> out(all.begin(), all.end());
  for (std::size_t i = 1; i < out.size(); ++i) {
    const auto hi = std::lower_bound(original.begin(), original.end(), out[i]);
    const auto k = static_cast<std::size_t>(hi - original.begin());
    const double base = original[k] - original[k == 0 ? 0 : k - 1];
    const double depth = std::log2(base / (out[i] - out[i - 1]));
    if (depth > static_cast<double>(cfg.depth_cap) + 0.5) {
      fail(ErrorCode::RefinementExhausted,
           "t-sampling refined beyond the depth cap near t = " + std::to_string(out[i]));
    }
  }
  return out;
}

namespace {

struct Stage {
  std::size_t m;
  HomotopyGrid g;
};

HomotopyGrid assemble(const SampledPath& loop, const std::vector<Stage>& stages,
                      const HomotopyConfig& cfg) {
  const std::size_t n = loop.dim();
  const std::size_t T = loop.size();
  HomotopyGrid out;
  out.t_params = loop.params();
  out.states.resize(T);
  out.lift.resize(T);
  for (std::size_t t = 0; t < T; ++t) {
    out.states[t].push_back(loop.state(t));
    out.lift[t].push_back(identity(n));
  }
  out.s_params.push_back(0.0);
  if (stages.empty()) {
    out.s_params.push_back(1.0);
    for (std::size_t t = 0; t < T; ++t) {
      out.states[t].push_back(loop.state(t));
      out.lift[t].push_back(identity(n));
    }
    out.stage_ends = {1};
    out.stage_labels = {"trivial"};
    return out;
  }
  const auto s = stage_s_params(cfg);
  const double K = static_cast<double>(stages.size());
  std::vector<ComplexMatrix> prefix(T, identity(n));
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const Stage& st = stages[k];
    const auto m = static_cast<Eigen::Index>(st.m);
    for (std::size_t r = 1; r < s.size(); ++r) {
      out.s_params.push_back(r + 1 == s.size() ? (static_cast<double>(k) + 1.0) / K
                                               : (static_cast<double>(k) + s[r]) / K);
      for (std::size_t t = 0; t < T; ++t) {
        ComplexMatrix b = identity(n);
        b.topLeftCorner(m, m) = st.g.lift[t][r];
        out.lift[t].push_back(normalized_lift(b * prefix[t], loop.state(t)));
        out.states[t].push_back(extend_corner(st.g.states[t][r], n));
      }
    }
    for (std::size_t t = 0; t < T; ++t) prefix[t] = out.lift[t].back();
    out.stage_ends.push_back(out.s_params.size() - 1);
    out.stage_labels.push_back(st.g.stage_labels.at(0) + " " + std::to_string(st.m));
  }
  out.s_params.back() = 1.0;
  return out;
}

}  // namespace

ContractAttempt contract_attempt(const SampledPath& loop, const HomotopyConfig& cfg) {
  std::vector<Stage> stages;
  SampledPath chi = loop;
  for (std::size_t m = loop.dim(); m >= 2; --m) {
    UnitaryLift ul = unitary_lift(chi, cfg);
    if (ul.path.size() != chi.size()) return {ul.path.params(), {}};
    std::vector<Complex> gamma(chi.size());
    for (std::size_t t = 0; t < chi.size(); ++t) gamma[t] = chi.state(t).expectation(ul.unitaries[t]);
    PhasePath ph = phase_lift(chi.params(), gamma, cfg);
    if (ph.params.size() != chi.size()) return {ph.params, {}};

    HomotopyGrid g1 = interp_unitary_homotopy(chi, ul.unitaries, ph, cfg);
    std::vector<DensityMatrix> pushed;
    for (const auto& row : g1.states) pushed.push_back(row.back());
    const SampledPath pushed_path(chi.params(), std::move(pushed), false);
    HomotopyGrid g2 = project_homotopy(pushed_path, corner_projector(m, 1), cfg);

    std::vector<DensityMatrix> next;
    for (const auto& row : g2.states) next.push_back(restrict_corner(row.back(), m - 1));
    chi = SampledPath(chi.params(), std::move(next), true);
    stages.push_back({m, std::move(g1)});
    stages.push_back({m, std::move(g2)});
  }
  return {{}, assemble(loop, stages, cfg)};
}

}  // namespace detail

HomotopyGrid contract_loop_matrix(const SampledPath& loop, const HomotopyConfig& cfg) {
  if (!loop.is_loop()) fail(ErrorCode::InvalidArgument, "contract_loop_matrix needs a loop");
  const ComplexMatrix base = basis_projector(loop.dim(), 0);
  if ((loop.state(0).matrix() - base).norm() > kLoopTol) {
    fail(ErrorCode::InvalidArgument, "loop is not based at |e_0><e_0|");
  }
  SampledPath current = loop;
  for (std::size_t attempt = 0; attempt <= cfg.max_restarts; ++attempt) {
    detail::ContractAttempt a = detail::contract_attempt(current, cfg);
    if (a.refined.empty()) return std::move(a.grid);
    current = loop.resampled(detail::merge_params(loop.params(), current.params(), a.refined, cfg));
  }
  fail(ErrorCode::RefinementExhausted, "contraction did not settle within the restart limit");
}

}  // namespace statespace
