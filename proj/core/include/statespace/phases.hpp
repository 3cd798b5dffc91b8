#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace statespace {

using BigInt = boost::multiprecision::cpp_int;
using Exponents = std::vector<std::uint64_t>;

/// Commutative monoid on n_gens generators modulo u ~ v for each relation.
struct PresentedMonoid {
  std::size_t n_gens = 0;
  std::vector<std::pair<Exponents, Exponents>> relations;

  /// InvalidArgument if some vector has the wrong length.
  void validate() const;
};

/// Z^free_rank + Z/d_1 + ... with d_1 | d_2 | ... and each d_i >= 2.
struct AbelianGroupInvariants {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;

  bool operator==(const AbelianGroupInvariants&) const = default;
  /// "Z", "Z^2 + Z/2", "0", ...
  std::string to_string() const;
};

/// Smith normal form diagonal (nonzero entries, divisibility order) of an
/// integer matrix.
std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m);

/// K_0 of the monoid: Z^n_gens modulo the span of u - v.
AbelianGroupInvariants k0(const PresentedMonoid& m);

/// Adds a generator tau and the relation elem + tau ~ 0.
PresentedMonoid localize(const PresentedMonoid& m, const Exponents& elem);

inline constexpr std::size_t kDefaultStableBound = 16;

/// Least (i, j), ordered by i + j and then i, with i, j <= bound such that
/// a + i psi and b + j psi are joined by at most `bound` relation rewrites.
/// Absent means nothing was found within the bound.
std::optional<std::pair<std::size_t, std::size_t>> stable_equiv(
    const Exponents& a, const Exponents& b, const Exponents& psi, const PresentedMonoid& m,
    std::size_t bound = kDefaultStableBound);

}  // namespace statespace
