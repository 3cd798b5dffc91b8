#include "statespace/metric.hpp"

#include <cmath>
#include <map>

#include "statespace/algebra.hpp"
#include "statespace/error.hpp"

namespace statespace {

std::vector<ComplexMatrix> gell_mann_basis(std::size_t d) {
  std::vector<ComplexMatrix> out;
  const auto n = static_cast<Eigen::Index>(d);
  for (Eigen::Index l = 1; l < n; ++l) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < l; ++i) m(i, i) = 1.0;
    m(l, l) = -static_cast<double>(l);
    out.push_back(m / static_cast<double>(l));
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(n, n);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      out.push_back(std::move(m));
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(n, n);
      m(j, k) = Complex{0.0, -1.0};
      m(k, j) = Complex{0.0, 1.0};
      out.push_back(std::move(m));
    }
  }
  return out;
}

namespace {

// Next k-subset of {0..n-1} in lexicographic order; false when exhausted.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

ObservableFamily::ObservableFamily(const LatticeSpec& spec, std::size_t max_terms) : spec_(spec) {
  const std::size_t n = spec.site_count();
  std::map<std::size_t, std::vector<ComplexMatrix>> bases;
  for (std::size_t s = 0; s < n; ++s) {
    if (!bases.count(spec.dim(s))) bases.emplace(spec.dim(s), gell_mann_basis(spec.dim(s)));
  }
  for (std::size_t size = 1; size <= n && terms_.size() < max_terms; ++size) {
    std::vector<std::size_t> region(size);
    for (std::size_t i = 0; i < size; ++i) region[i] = i;
    do {
      std::vector<std::size_t> digit(size, 0);
      bool more = true;
      while (more && terms_.size() < max_terms) {
        ComplexMatrix op = ComplexMatrix::Identity(1, 1);
        for (std::size_t i = 0; i < size; ++i) op = kron(op, bases.at(spec.dim(region[i]))[digit[i]]);
        terms_.push_back({region, std::move(op)});
        more = false;
        for (std::size_t i = size; i-- > 0;) {
          if (++digit[i] < bases.at(spec.dim(region[i])).size()) {
            more = true;
            break;
          }
          digit[i] = 0;
        }
      }
    } while (terms_.size() < max_terms && next_combination(region, n));
  }
}

ComplexMatrix ObservableFamily::full(std::size_t k) const {
  const FamilyTerm& t = term(k);
  return embed_local(t.local, t.sites, spec_);
}

MetricValue weakstar_dist(const DensityMatrix& rho, const DensityMatrix& sigma,
                          const ObservableFamily& fam, std::size_t K) {
  if (rho.dim() != sigma.dim() || rho.dim() != fam.spec().total_dim()) {
    fail(ErrorCode::DimMismatch, "states and observable family have different dimensions");
  }
  const ComplexMatrix diff = rho.matrix() - sigma.matrix();
  const std::size_t used = std::min(K, fam.size());
  MetricValue out;
  std::map<std::vector<std::size_t>, ComplexMatrix> reduced;
  double scale = 0.25;  // 1 / 2^{k+1} at k = 1
  for (std::size_t k = 0; k < used; ++k, scale *= 0.5) {
    const FamilyTerm& t = fam.term(k);
    auto it = reduced.find(t.sites);
    if (it == reduced.end()) {
      it = reduced.emplace(t.sites, partial_trace(diff, fam.spec(), t.sites)).first;
    }
    const Complex e = (it->second.transpose().cwiseProduct(t.local)).sum();
    out.value += scale * std::abs(e) / static_cast<double>(t.weight());
  }
  out.tail_bound = K >= fam.size() ? 0.0 : std::ldexp(1.0, -static_cast<int>(K));
  return out;
}

}  // namespace statespace
