#include <algorithm>
#include <cmath>
#include <limits>

#include "statespace/error.hpp"
#include "statespace/homotopy.hpp"
#include "statespace/metric.hpp"
#include "statespace/parallel.hpp"

namespace statespace {

namespace {

void note_worst(Deviation& d, double v, std::size_t t, std::size_t s) {
  if (!(v <= d.value)) d = {v, t, s};  // NaN counts as worst
}

double consistency(const HomotopyGrid& g, std::size_t t, std::size_t s) {
  try {
    const DensityMatrix acted = act(g.lift[t][s], g.states[t][0]);
    return (g.states[t][s].matrix() - acted.matrix()).norm();
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

VerifyReport verify_homotopy(const HomotopyGrid& grid, const VerifyOptions& opts) {
  VerifyReport rep;
  const std::size_t T = grid.t_count();
  const std::size_t S = grid.s_count();
  if (T == 0 || S == 0 || grid.states.size() != T || grid.lift.size() != T) {
    rep.s0_lift.value = std::numeric_limits<double>::infinity();
    return rep;
  }
  const std::size_t n = grid.dim();
  const DensityMatrix base = grid.states[0][0];
  const DensityMatrix target = opts.target.value_or(base);
  const ComplexMatrix one = identity(n);

  for (std::size_t t = 0; t < T; ++t) {
    if (grid.states[t].size() != S || grid.lift[t].size() != S) {
      rep.s0_lift = {std::numeric_limits<double>::infinity(), t, 0};
      return rep;
    }
    note_worst(rep.s0_lift, (grid.lift[t][0] - one).norm(), t, 0);
    if (opts.input) {
      note_worst(rep.s0_column,
            (grid.states[t][0].matrix() - opts.input->at(grid.t_params[t]).matrix()).norm(), t, 0);
    }
    note_worst(rep.final_column, (grid.states[t][S - 1].matrix() - target.matrix()).norm(), t, S - 1);
  }
  for (std::size_t s = 0; s < S; ++s) {
    note_worst(rep.boundary, (grid.states[0][s].matrix() - base.matrix()).norm(), 0, s);
    note_worst(rep.boundary, (grid.states[T - 1][s].matrix() - base.matrix()).norm(), T - 1, s);
  }

  const std::size_t s_lift = grid.final_column_exempt ? S - 1 : S;
  std::optional<ObservableFamily> fam;
  if (opts.spec) {
    fam.emplace(*opts.spec, opts.metric_terms);
  } else if (n >= 2) {
    fam.emplace(LatticeSpec({n}), opts.metric_terms);
  }
  std::vector<Deviation> cons(T), cont(T);
  parallel_for(T, [&](std::size_t t) {
    for (std::size_t s = 1; s < s_lift; ++s) note_worst(cons[t], consistency(grid, t, s), t, s);
    if (!fam) return;
    for (std::size_t s = 0; s < S; ++s) {
      if (s + 1 < S) {
        note_worst(cont[t],
              weakstar_dist(grid.states[t][s], grid.states[t][s + 1], *fam, opts.metric_terms).value,
              t, s);
      }
      if (t + 1 < T) {
        note_worst(cont[t],
              weakstar_dist(grid.states[t][s], grid.states[t + 1][s], *fam, opts.metric_terms).value,
              t, s);
      }
    }
  });
  for (std::size_t t = 0; t < T; ++t) {
    note_worst(rep.lift_consistency, cons[t].value, cons[t].t, cons[t].s);
    note_worst(rep.continuity, cont[t].value, cont[t].t, cont[t].s);
  }
  rep.pass = rep.s0_lift.value <= opts.tol && rep.s0_column.value <= opts.tol &&
             rep.lift_consistency.value <= opts.tol && rep.boundary.value <= opts.tol &&
             rep.final_column.value <= opts.tol && rep.continuity.value <= opts.continuity_tol;
  return rep;
}

std::vector<CellDeviation> cell_deviations(const HomotopyGrid& grid,
                                           const std::optional<DensityMatrix>& target) {
  std::vector<CellDeviation> out;
  if (grid.t_count() == 0) return out;
  const DensityMatrix goal = target.value_or(grid.states[0][0]);
  for (std::size_t t = 0; t < grid.t_count(); ++t) {
    for (std::size_t s = 0; s < grid.s_count(); ++s) {
      CellDeviation c;
      c.t_index = t;
      c.s_index = s;
      const bool exempt = grid.final_column_exempt && s + 1 == grid.s_count();
      c.consistency = exempt ? 0.0 : consistency(grid, t, s);
      c.target_distance = (grid.states[t][s].matrix() - goal.matrix()).norm();
      c.purity = grid.states[t][s].purity();
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace statespace
