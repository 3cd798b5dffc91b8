#pragma once

#include <cstddef>
#include <vector>

#include "statespace/lattice.hpp"
#include "statespace/linalg.hpp"
#include "statespace/states.hpp"

namespace statespace {

/// One observable of the dense family: a unit-norm operator supported on a
/// region, stored locally together with its sites (ascending).
struct FamilyTerm {
  std::vector<std::size_t> sites;
  ComplexMatrix local;
  std::size_t weight() const noexcept { return sites.size(); }
};

/// Generalized Gell-Mann basis of M_d without the identity, each element
/// scaled to operator norm 1. Diagonal elements come first, then the
/// symmetric and antisymmetric off-diagonal pairs. For d = 2 this is
/// (sigma^3, sigma^1, sigma^2).
std::vector<ComplexMatrix> gell_mann_basis(std::size_t d);

/// Deterministic enumeration A_1, A_2, ... for a lattice. Regions are taken
/// by increasing size, then in lexicographic site order; within a region the
/// operators are tensor products of per-site Gell-Mann elements with the
/// last site varying fastest. Enumeration stops after max_terms entries.
class ObservableFamily {
 public:
  ObservableFamily(const LatticeSpec& spec, std::size_t max_terms);

  const LatticeSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const FamilyTerm& term(std::size_t k) const { return terms_.at(k); }
  /// A_k as an operator on the whole truncation.
  ComplexMatrix full(std::size_t k) const;

 private:
  LatticeSpec spec_;
  std::vector<FamilyTerm> terms_;
};

struct MetricValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// sum_{k=1..K} |tr((rho - sigma) A_k)| / (2^{k+1} lambda_k), lambda_k the
/// support size of A_k. The omitted tail is at most 2^-K; when K covers the
/// whole family the reported bound is 0.
MetricValue weakstar_dist(const DensityMatrix& rho, const DensityMatrix& sigma,
                          const ObservableFamily& fam, std::size_t K);

}  // namespace statespace
