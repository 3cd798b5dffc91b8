#include <algorithm>
#include <cmath>
#include <string>

#include "statespace/error.hpp"
#include "statespace/homotopy.hpp"

namespace statespace {

namespace {

// Forward sweep for the phases. Interior samples keep the previous phase;
// once |gamma| exceeds 1/2 the phase follows the anchored ball map until
// |gamma| drops below 1/4 again. Inside the ball the angle of lambda gamma is
// interpolated linearly in the rescaled radius from its value at entry down
// to 0 on the edge, which is |w|/w there.
struct PhaseSweep {
  double edge;
  bool ball = false;
  double r0 = 0.0;
  double theta0 = 0.0;
  Complex lam{1.0, 0.0};

  double rescaled(double r) const { return std::min(1.0, r / edge); }

  Complex step(Complex g, bool first) {
    const double r = std::abs(g);
    if (!ball && r > 0.5) {
      ball = true;
      if (first && r >= edge) lam = std::conj(g) / r;
      r0 = rescaled(r);
      theta0 = std::arg(lam * g);
    } else if (ball && r < 0.25) {
      ball = false;
    }
    if (ball) {
      const double target = r0 >= 1.0 ? 0.0 : theta0 * (1.0 - rescaled(r)) / (1.0 - r0);
      lam = std::polar(1.0, target) * std::conj(g) / r;
    }
    return lam;
  }
};

double step_angle(Complex a, Complex b) { return std::abs(std::arg(b * std::conj(a))); }

}  // namespace

PhasePath phase_lift(std::span<const double> params, std::span<const Complex> gamma,
                     const HomotopyConfig& cfg) {
  if (params.size() != gamma.size() || params.empty()) {
    fail(ErrorCode::DimMismatch, "phase_lift needs one gamma value per param");
  }
  for (Complex z : gamma) {
    if (!(std::abs(z) <= 1.0 + 1e-10)) fail(ErrorCode::DomainError, "gamma leaves the closed unit disk");
  }
  PhasePath out;
  // Samples before the current one are final, so a rejected step is bisected
  // and the sweep resumes from the last accepted state.
  std::vector<double> ts(params.begin(), params.end());
  std::vector<Complex> gs(gamma.begin(), gamma.end());
  std::vector<std::size_t> depth(ts.size(), 0);
  PhaseSweep sweep{1.0 - cfg.delta_edge};
  out.params.push_back(ts[0]);
  out.gamma.push_back(gs[0]);
  out.phases.push_back(sweep.step(gs[0], true));
  std::size_t prev_depth = 0;
  // pending samples are kept reversed so the next one is at the back
  std::reverse(ts.begin(), ts.end());
  std::reverse(gs.begin(), gs.end());
  std::reverse(depth.begin(), depth.end());
  ts.pop_back();
  gs.pop_back();
  depth.pop_back();
  while (!ts.empty()) {
    PhaseSweep trial = sweep;
    const Complex lam = trial.step(gs.back(), false);
    if (step_angle(out.phases.back(), lam) <= cfg.theta_step) {
      sweep = trial;
      out.params.push_back(ts.back());
      out.gamma.push_back(gs.back());
      out.phases.push_back(lam);
      prev_depth = depth.back();
      ts.pop_back();
      gs.pop_back();
      depth.pop_back();
      continue;
    }
    const std::size_t d = std::max(prev_depth, depth.back()) + 1;
    if (d > cfg.depth_cap) {
      fail(ErrorCode::RefinementExhausted,
           "phase_lift: bisection depth cap reached near t = " + std::to_string(ts.back()));
    }
    ts.push_back(0.5 * (out.params.back() + ts.back()));
    gs.push_back(0.5 * (out.gamma.back() + gs.back()));
    depth.push_back(d);
  }
  return out;
}

double phase_lift_violation(const PhasePath& p, const HomotopyConfig& cfg) {
  double worst = 0.0;
  for (std::size_t j = 0; j < p.phases.size(); ++j) {
    worst = std::max(worst, std::abs(std::abs(p.phases[j]) - 1.0) - 1e-12);
    if (std::abs(p.gamma[j]) >= 1.0 - cfg.delta_edge) {
      worst = std::max(worst, std::abs(p.phases[j] * p.gamma[j] - 1.0) - cfg.eps_edge);
    }
    if (j > 0) worst = std::max(worst, step_angle(p.phases[j - 1], p.phases[j]) - cfg.theta_step);
  }
  return std::max(worst, 0.0);
}

}  // namespace statespace
