#include <algorithm>
#include <cmath>
#include <string>

#include "homotopy_internal.hpp"
#include "statespace/algebra.hpp"
#include "statespace/error.hpp"
#include "statespace/metric.hpp"

namespace statespace {

double factorization_residual(const DensityMatrix& psi, const LatticeSpec& spec, std::size_t site) {
  if (psi.dim() != spec.total_dim()) fail(ErrorCode::DimMismatch, "state does not match lattice");
  if (site >= spec.site_count()) fail(ErrorCode::BadSiteSet, "site index out of range");
  if (spec.site_count() == 1) return 0.0;
  std::vector<std::size_t> others;
  std::vector<std::size_t> perm{site};
  std::vector<std::size_t> other_dims;
  for (std::size_t s = 0; s < spec.site_count(); ++s) {
    if (s == site) continue;
    others.push_back(s);
    perm.push_back(s);
    other_dims.push_back(spec.dim(s));
  }
  const std::vector<std::size_t> all_dims(spec.dims().begin(), spec.dims().end());
  const ComplexMatrix reordered = permute_factors(psi.matrix(), all_dims, perm);
  const std::size_t here[] = {site};
  const ComplexMatrix rho_site = partial_trace(psi.matrix(), spec, here);
  const ComplexMatrix rho_rest = partial_trace(psi.matrix(), spec, others);

  const LatticeSpec rest_spec(other_dims, spec.size_cap());
  const ObservableFamily rest_family(rest_spec, 1024);
  std::vector<ComplexMatrix> rest_ops;
  for (std::size_t k = 0; k < rest_family.size(); ++k) rest_ops.push_back(rest_family.full(k));

  const auto d = static_cast<Eigen::Index>(spec.dim(site));
  const auto R = static_cast<Eigen::Index>(rest_spec.total_dim());
  double worst = 0.0;
  for (const ComplexMatrix& b : gell_mann_basis(spec.dim(site))) {
    // X_b = tr_site(psi (b (x) 1))
    ComplexMatrix x = ComplexMatrix::Zero(R, R);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        if (b(j, i) != 0.0) x += b(j, i) * reordered.block(i * R, j * R, R, R);
      }
    }
    const Complex eb = (rho_site.transpose().cwiseProduct(b)).sum();
    for (const ComplexMatrix& a : rest_ops) {
      const Complex eab = (x.transpose().cwiseProduct(a)).sum();
      const Complex ea = (rho_rest.transpose().cwiseProduct(a)).sum();
      worst = std::max(worst, std::abs(eab - ea * eb));
    }
  }
  return worst;
}

namespace {

struct Attempt {
  std::vector<double> refined;
  DisentangleResult result;
};

Attempt attempt(const SampledPath& loop, const LatticeSpec& spec, const HomotopyConfig& cfg) {
  const std::size_t T = loop.size();
  const std::size_t D = spec.total_dim();
  const std::size_t sites = spec.site_count();
  Attempt out;
  HomotopyGrid& grid = out.result.grid;
  grid.t_params = loop.params();
  grid.s_params.push_back(0.0);
  grid.states.resize(T);
  grid.lift.resize(T);
  std::vector<DensityMatrix> chi = loop.states();
  std::vector<ComplexMatrix> prefix(T, identity(D));
  for (std::size_t t = 0; t < T; ++t) {
    grid.states[t].push_back(chi[t]);
    grid.lift[t].push_back(identity(D));
  }

  for (std::size_t i = 0; i < sites; ++i) {
    const std::size_t here[] = {i};
    std::vector<DensityMatrix> marg;
    marg.reserve(T);
    for (std::size_t t = 0; t < T; ++t) {
      marg.push_back(DensityMatrix::trusted(partial_trace(chi[t].matrix(), spec, here)));
    }
    const SampledPath marginal(loop.params(), std::move(marg), true);
    detail::ContractAttempt local = detail::contract_attempt(marginal, cfg);
    if (!local.refined.empty()) {
      out.refined = std::move(local.refined);
      return out;
    }
    const HomotopyGrid& g = local.grid;
    for (std::size_t c = 1; c < g.s_count(); ++c) {
      grid.s_params.push_back((static_cast<double>(i) + g.s_params[c]) / static_cast<double>(sites));
      for (std::size_t t = 0; t < T; ++t) {
        const ComplexMatrix b = embed_local(g.lift[t][c], here, spec);
        grid.states[t].push_back(act(b, chi[t], cfg.tau_ideal));
        grid.lift[t].push_back(detail::normalized_lift(b * prefix[t], loop.state(t)));
      }
    }
    SiteStage stage;
    stage.site = i;
    for (std::size_t t = 0; t < T; ++t) {
      chi[t] = grid.states[t].back();
      prefix[t] = grid.lift[t].back();
      stage.factorization_residual =
          std::max(stage.factorization_residual, factorization_residual(chi[t], spec, i));
      for (std::size_t j = 0; j <= i; ++j) {
        const std::size_t sj[] = {j};
        const ComplexMatrix m = partial_trace(chi[t].matrix(), spec, sj);
        stage.marginal_deviation =
            std::max(stage.marginal_deviation, (m - basis_projector(spec.dim(j), 0)).norm());
      }
    }
    if (stage.factorization_residual > kFactorizationFailure) {
      fail(ErrorCode::FactorizationFailure,
           "site " + std::to_string(i) + ": factorization residual " +
               std::to_string(stage.factorization_residual));
    }
    out.result.max_factorization_residual =
        std::max(out.result.max_factorization_residual, stage.factorization_residual);
    stage.local = std::move(local.grid);
    out.result.stages.push_back(std::move(stage));
    grid.stage_ends.push_back(grid.s_params.size() - 1);
    grid.stage_labels.push_back("site " + std::to_string(i));
  }
  grid.s_params.back() = 1.0;
  return out;
}

}  // namespace

DisentangleResult disentangle_loop(const SampledPath& loop, const LatticeSpec& spec,
                                   const HomotopyConfig& cfg) {
  if (loop.dim() != spec.total_dim()) fail(ErrorCode::DimMismatch, "loop does not match lattice");
  if (!loop.is_loop()) fail(ErrorCode::InvalidArgument, "disentangle_loop needs a loop");
  if ((loop.state(0).matrix() - basis_projector(spec.total_dim(), 0)).norm() > kLoopTol) {
    fail(ErrorCode::InvalidArgument, "loop is not based at the product state |0...0>");
  }
  SampledPath current = loop;
  for (std::size_t k = 0; k <= cfg.max_restarts; ++k) {
    Attempt a = attempt(current, spec, cfg);
    if (a.refined.empty()) return std::move(a.result);
    current = loop.resampled(detail::merge_params(loop.params(), current.params(), a.refined, cfg));
  }
  fail(ErrorCode::RefinementExhausted, "disentangling did not settle within the restart limit");
}

}  // namespace statespace
