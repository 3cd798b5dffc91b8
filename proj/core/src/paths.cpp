#include <algorithm>
#include <cmath>
#include <numbers>

#include "statespace/error.hpp"
#include "statespace/homotopy.hpp"

namespace statespace {

SampledPath::SampledPath(std::vector<double> params, std::vector<DensityMatrix> states, bool loop)
    : params_(std::move(params)), states_(std::move(states)), loop_(loop) {
  if (params_.size() < 2 || params_.size() != states_.size()) {
    fail(ErrorCode::InvalidArgument, "a path needs at least two samples and one state per param");
  }
  if (params_.front() != 0.0 || params_.back() != 1.0) {
    fail(ErrorCode::InvalidArgument, "path params must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < params_.size(); ++i) {
    if (!(params_[i] > params_[i - 1])) {
      fail(ErrorCode::InvalidArgument, "path params must be strictly increasing");
    }
    if (states_[i].dim() != states_[0].dim()) {
      fail(ErrorCode::DimMismatch, "path states have different dimensions");
    }
  }
  if (loop_ && (states_.front().matrix() - states_.back().matrix()).norm() > kLoopTol) {
    fail(ErrorCode::InvalidArgument, "loop does not close");
  }
}

DensityMatrix SampledPath::at(double t) const {
  if (t <= 0.0) return states_.front();
  if (t >= 1.0) return states_.back();
  const auto it = std::upper_bound(params_.begin(), params_.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - params_.begin());
  const std::size_t lo = hi - 1;
  if (params_[lo] == t) return states_[lo];
  const double a = (t - params_[lo]) / (params_[hi] - params_[lo]);
  return DensityMatrix::trusted((1.0 - a) * states_[lo].matrix() + a * states_[hi].matrix());
}

SampledPath SampledPath::resampled(const std::vector<double>& params) const {
  std::vector<DensityMatrix> st;
  st.reserve(params.size());
  for (double t : params) st.push_back(at(t));
  return SampledPath(params, std::move(st), loop_);
}

std::vector<double> uniform_params(std::size_t samples) {
  if (samples < 2) fail(ErrorCode::InvalidArgument, "need at least two samples");
  std::vector<double> p(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    p[i] = static_cast<double>(i) / static_cast<double>(samples - 1);
  }
  p.back() = 1.0;
  return p;
}

SampledPath constant_loop(std::size_t n, std::size_t samples) {
  auto params = uniform_params(samples);
  std::vector<DensityMatrix> st(samples, DensityMatrix::basis_state(n, 0));
  return SampledPath(std::move(params), std::move(st), true);
}

SampledPath great_circle_loop(std::size_t samples) {
  auto params = uniform_params(samples);
  std::vector<DensityMatrix> st;
  for (double t : params) {
    ComplexVector v(2);
    v << std::cos(std::numbers::pi * t), std::sin(std::numbers::pi * t);
    st.push_back(DensityMatrix::pure(v));
  }
  st.front() = DensityMatrix::basis_state(2, 0);
  st.back() = DensityMatrix::basis_state(2, 0);
  return SampledPath(std::move(params), std::move(st), true);
}

SampledPath random_loop(Rng& rng, std::size_t n, std::size_t samples, double mixing) {
  ComplexMatrix h1 = random_hermitian(rng, n);
  ComplexMatrix h2 = random_hermitian(rng, n);
  h1 /= operator_norm(h1);
  h2 /= operator_norm(h2);
  const ComplexMatrix mix = random_density_matrix(rng, n);
  const ComplexMatrix base = basis_projector(n, 0);
  auto params = uniform_params(samples);
  std::vector<DensityMatrix> st;
  st.reserve(samples);
  for (double t : params) {
    const double a = 2.0 * std::numbers::pi * t;
    const ComplexMatrix v = exp_i_herm(std::sin(a) * h1 + (1.0 - std::cos(a)) * h2);
    const double m = mixing * std::pow(std::sin(std::numbers::pi * t), 2);
    st.push_back(DensityMatrix::trusted((1.0 - m) * v * base * v.adjoint() + m * mix));
  }
  st.front() = DensityMatrix::basis_state(n, 0);
  st.back() = DensityMatrix::basis_state(n, 0);
  return SampledPath(std::move(params), std::move(st), true);
}

}  // namespace statespace
