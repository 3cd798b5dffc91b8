#include "statespace/lattice.hpp"

#include <limits>
#include <string>

#include "statespace/error.hpp"

namespace statespace {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::BadSiteSet: return "BadSiteSet";
    case ErrorCode::SizeCap: return "SizeCap";
    case ErrorCode::SiteCountMismatch: return "SiteCountMismatch";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::GelfandIdeal: return "GelfandIdeal";
    case ErrorCode::NotSupported: return "NotSupported";
    case ErrorCode::RefinementExhausted: return "RefinementExhausted";
    case ErrorCode::FactorizationFailure: return "FactorizationFailure";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::SingularOverlap: return "SingularOverlap";
    case ErrorCode::DegenerateGround: return "DegenerateGround";
    case ErrorCode::NotGapped: return "NotGapped";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

LatticeSpec::LatticeSpec(std::vector<std::size_t> site_dims, std::size_t size_cap)
    : dims_(std::move(site_dims)), cap_(size_cap), total_(1) {
  if (dims_.empty()) fail(ErrorCode::InvalidArgument, "lattice must have at least one site");
  for (std::size_t d : dims_) {
    if (d < 2) fail(ErrorCode::InvalidArgument, "site dimension must be >= 2");
    if (total_ > cap_ / d) {
      fail(ErrorCode::SizeCap, "lattice dimension exceeds size cap " + std::to_string(cap_));
    }
    total_ *= d;
  }
  if (total_ > cap_) {
    fail(ErrorCode::SizeCap, "lattice dimension exceeds size cap " + std::to_string(cap_));
  }
}

LatticeSpec LatticeSpec::uniform(std::size_t n_sites, std::size_t site_dim,
                                 std::size_t size_cap) {
  return LatticeSpec(std::vector<std::size_t>(n_sites, site_dim), size_cap);
}

std::size_t LatticeSpec::sub_dim(std::span<const std::size_t> sites) const {
  std::size_t d = 1;
  for (std::size_t s : sites) d *= dims_.at(s);
  return d;
}

std::vector<std::size_t> LatticeSpec::strides() const {
  std::vector<std::size_t> st(dims_.size(), 1);
  for (std::size_t i = dims_.size(); i-- > 1;) st[i - 1] = st[i] * dims_[i];
  return st;
}

void check_site_set(std::span<const std::size_t> sites, const LatticeSpec& spec) {
  std::vector<bool> seen(spec.site_count(), false);
  for (std::size_t s : sites) {
    if (s >= spec.site_count()) {
      fail(ErrorCode::BadSiteSet, "site index " + std::to_string(s) + " out of range");
    }
    if (seen[s]) fail(ErrorCode::BadSiteSet, "duplicate site index " + std::to_string(s));
    seen[s] = true;
  }
}

}  // namespace statespace
