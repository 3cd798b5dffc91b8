#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace statespace {

inline constexpr std::size_t kDefaultSizeCap = std::size_t{1} << 12;

/// Finite truncation of a lattice: one Hilbert-space dimension per site.
/// Site 0 is the leftmost (slowest-varying) tensor factor.
class LatticeSpec {
 public:
  explicit LatticeSpec(std::vector<std::size_t> site_dims,
                       std::size_t size_cap = kDefaultSizeCap);

  static LatticeSpec uniform(std::size_t n_sites, std::size_t site_dim,
                             std::size_t size_cap = kDefaultSizeCap);

  std::size_t site_count() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t site) const { return dims_.at(site); }
  std::span<const std::size_t> dims() const noexcept { return dims_; }
  std::size_t total_dim() const noexcept { return total_; }
  std::size_t size_cap() const noexcept { return cap_; }

  /// Product of the dimensions of the given sites.
  std::size_t sub_dim(std::span<const std::size_t> sites) const;

  /// Row-major strides: stride(i) = product of dims to the right of i.
  std::vector<std::size_t> strides() const;

  bool operator==(const LatticeSpec& other) const noexcept {
    return dims_ == other.dims_;
  }

 private:
  std::vector<std::size_t> dims_;
  std::size_t cap_;
  std::size_t total_;
};

/// Validates a site subset: indices in range and pairwise distinct.
void check_site_set(std::span<const std::size_t> sites, const LatticeSpec& spec);

}  // namespace statespace
