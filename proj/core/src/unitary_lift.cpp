#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "statespace/error.hpp"
#include "statespace/homotopy.hpp"

namespace statespace {

namespace {

constexpr double kRampLow = 5.0 / 8.0;
constexpr double kRampHigh = 7.0 / 8.0;

// One transport step: rotate v = U Phi toward e_0 in the plane of e_0 and v
// until the angle is at most the allowance for the current top eigenvalue.
ComplexMatrix step(const ComplexMatrix& prev, const DensityMatrix& rho) {
  const HermitianEig e = herm_eig(rho.matrix());
  const Eigen::Index n = e.values.size();
  const double top = e.values(n - 1);
  const double w = std::clamp((top - kRampLow) / (kRampHigh - kRampLow), 0.0, 1.0);
  const double allowed = (1.0 - w) * std::numbers::pi / 2.0;

  const ComplexVector v = prev * e.vectors.col(n - 1);
  const Complex c = v(0);
  const double ac = std::abs(c);
  const double off = v.tail(n - 1).norm();
  // atan2 keeps small angles accurate where acos(|c|) would round to 0.
  const double theta = std::atan2(off, ac);
  const double alpha = theta - allowed;
  if (!(alpha > 0.0) || !(off > 0.0)) return prev;

  const Complex phase = ac > 0.0 ? c / ac : Complex{1.0, 0.0};
  ComplexVector u = v / phase;
  u(0) = 0.0;
  u /= off;
  ComplexVector e0 = ComplexVector::Zero(n);
  e0(0) = 1.0;
  ComplexMatrix g = identity(static_cast<std::size_t>(n));
  g += (std::cos(alpha) - 1.0) * (e0 * e0.adjoint() + u * u.adjoint());
  g += std::sin(alpha) * (e0 * u.adjoint() - u * e0.adjoint());
  return g * prev;
}

}  // namespace

UnitaryLift unitary_lift(const SampledPath& loop, const HomotopyConfig& cfg) {
  const std::size_t n = loop.dim();
  const ComplexMatrix base = basis_projector(n, 0);
  if (!loop.is_loop()) fail(ErrorCode::InvalidArgument, "unitary_lift needs a loop");
  if ((loop.states().front().matrix() - base).norm() > kLoopTol ||
      (loop.states().back().matrix() - base).norm() > kLoopTol) {
    fail(ErrorCode::InvalidArgument, "unitary_lift needs a loop based at |e_0><e_0|");
  }
  std::vector<double> params = loop.params();
  std::vector<DensityMatrix> states = loop.states();
  std::vector<std::size_t> depth(params.size(), 0);
  std::vector<ComplexMatrix> us{identity(n)};
  us.reserve(params.size());
  std::size_t j = 1;
  while (j < params.size()) {
    ComplexMatrix next = step(us.back(), states[j]);
    if ((next - us.back()).norm() <= cfg.eta_step) {
      us.push_back(std::move(next));
      ++j;
      continue;
    }
    const std::size_t d = std::max(depth[j - 1], depth[j]) + 1;
    if (d > cfg.depth_cap) {
      fail(ErrorCode::RefinementExhausted,
           "unitary_lift: bisection depth cap reached near t = " + std::to_string(params[j]));
    }
    const auto pos = static_cast<std::ptrdiff_t>(j);
    params.insert(params.begin() + pos, 0.5 * (params[j - 1] + params[j]));
    states.insert(states.begin() + pos, DensityMatrix::trusted(0.5 * (states[j - 1].matrix() +
                                                                      states[j].matrix())));
    depth.insert(depth.begin() + pos, d);
  }
  return UnitaryLift{SampledPath(std::move(params), std::move(states), true), std::move(us)};
}

double unitary_lift_margin(const SampledPath& loop, std::span<const ComplexMatrix> unitaries) {
  if (unitaries.size() != loop.size()) fail(ErrorCode::DimMismatch, "one unitary per sample needed");
  const auto n = static_cast<Eigen::Index>(loop.dim());
  double margin = 1.0;
  for (std::size_t j = 0; j < loop.size(); ++j) {
    const ComplexMatrix m = unitaries[j] * loop.state(j).matrix() * unitaries[j].adjoint();
    margin = std::min(margin, 1.0 - m(n - 1, n - 1).real());
  }
  return margin;
}

}  // namespace statespace
