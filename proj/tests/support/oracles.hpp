#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Cx = std::complex<double>;

/// (i*b.rows() + k, j*b.cols() + l) -> a(i, j) b(k, l)
inline Mat kron_index(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Mat kron_eigen(const Mat& a, const Mat& b) { return Eigen::kroneckerProduct(a, b).eval(); }

/// Digits of a flat index in the mixed radix dims (site 0 most significant).
inline std::vector<std::size_t> digits(std::size_t idx, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t s = dims.size(); s-- > 0;) {
    d[s] = idx % dims[s];
    idx /= dims[s];
  }
  return d;
}

inline std::size_t flat(const std::vector<std::size_t>& d, const std::vector<std::size_t>& dims) {
  std::size_t idx = 0;
  for (std::size_t s = 0; s < dims.size(); ++s) idx = idx * dims[s] + d[s];
  return idx;
}

/// Sum over matching traced digits, looping over every pair of full indices.
inline Mat partial_trace_loops(const Mat& a, const std::vector<std::size_t>& dims,
                               std::vector<std::size_t> keep) {
  std::sort(keep.begin(), keep.end());
  std::vector<std::size_t> kdims;
  for (auto s : keep) kdims.push_back(dims[s]);
  std::size_t kd = 1;
  for (auto d : kdims) kd *= d;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const auto dr = digits(static_cast<std::size_t>(r), dims);
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      const auto dc = digits(static_cast<std::size_t>(c), dims);
      bool traced_equal = true;
      for (std::size_t s = 0; s < dims.size() && traced_equal; ++s) {
        if (std::find(keep.begin(), keep.end(), s) == keep.end() && dr[s] != dc[s]) traced_equal = false;
      }
      if (!traced_equal) continue;
      std::vector<std::size_t> kr, kc;
      for (auto s : keep) {
        kr.push_back(dr[s]);
        kc.push_back(dc[s]);
      }
      out(static_cast<Eigen::Index>(flat(kr, kdims)), static_cast<Eigen::Index>(flat(kc, kdims))) += a(r, c);
    }
  }
  return out;
}

/// Matrix of the map |x_0 .. x_{k-1}> -> |x_{perm[0]} .. x_{perm[k-1]}>.
inline Mat factor_permutation(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> out_dims;
  for (auto p : perm) out_dims.push_back(dims[p]);
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  Mat m = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = digits(i, dims);
    std::vector<std::size_t> e;
    for (auto p : perm) e.push_back(d[p]);
    m(static_cast<Eigen::Index>(flat(e, out_dims)), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return m;
}

/// Eigenvalues from the general (non-Hermitian) solver, real parts sorted.
inline std::vector<double> eigenvalues_general(const Mat& a) {
  Eigen::ComplexEigenSolver<Mat> es(a);
  std::vector<double> v;
  for (Eigen::Index i = 0; i < a.rows(); ++i) v.push_back(es.eigenvalues()(i).real());
  std::sort(v.begin(), v.end());
  return v;
}

/// exp(i a) by Pade scaling and squaring.
inline Mat exp_i(const Mat& a) { return (Cx{0.0, 1.0} * a).exp(); }

/// Bloch vector (tr(rho sx), tr(rho sy), tr(rho sz)) of a qubit state.
inline Eigen::Vector3d bloch(const Mat& rho) {
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

/// Projector onto the lower band of w.sigma written in closed form.
inline Mat lower_band(double theta, double phi) {
  const double w[3] = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  Mat h(2, 2);
  h << w[2], Cx(w[0], -w[1]), Cx(w[0], w[1]), -w[2];
  return 0.5 * (Mat::Identity(2, 2) - h);
}

/// (1 / 2 pi i) * integral of tr(P [d_theta P, d_phi P]) over the sphere,
/// central differences on an n x n midpoint grid.
template <class Projector>
double curvature_chern(Projector p, int n) {
  const double dth = std::numbers::pi / n, dph = 2.0 * std::numbers::pi / n, h = 1e-5;
  Cx total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = (i + 0.5) * dth;
    for (int j = 0; j < n; ++j) {
      const double ph = (j + 0.5) * dph;
      const Mat P = p(th, ph);
      const Mat dT = (p(th + h, ph) - p(th - h, ph)) / (2 * h);
      const Mat dP = (p(th, ph + h) - p(th, ph - h)) / (2 * h);
      total += (P * (dT * dP - dP * dT)).trace() * dth * dph;
    }
  }
  return (total / Cx(0.0, 2.0 * std::numbers::pi)).real();
}

// Integer matrices ---------------------------------------------------------

using IMat = std::vector<std::vector<long long>>;

inline long long det_small(const IMat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IMat sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(row);
    }
    d += (c % 2 == 0 ? 1 : -1) * m[0][c] * det_small(sub);
  }
  return d;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Invariant factors d_k / d_{k-1} where d_k is the gcd of all k x k minors.
inline std::vector<long long> invariant_factors(const IMat& m) {
  if (m.empty()) return {};
  const std::size_t rows = m.size(), cols = m[0].size();
  std::vector<long long> divisors{1};
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    long long g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        IMat sub;
        for (auto i : r) {
          std::vector<long long> row;
          for (auto j : c) row.push_back(m[i][j]);
          sub.push_back(row);
        }
        g = std::gcd(g, std::llabs(det_small(sub)));
      }
    if (g == 0) break;
    divisors.push_back(g);
  }
  std::vector<long long> out;
  for (std::size_t k = 1; k < divisors.size(); ++k) out.push_back(divisors[k] / divisors[k - 1]);
  return out;
}

}  // namespace oracle
