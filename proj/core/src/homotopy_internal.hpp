#pragma once

#include <vector>

#include "statespace/homotopy.hpp"

namespace statespace::detail {

/// One pass of the corner-by-corner contraction. If a stage had to bisect
/// its t-samples, refined holds that stage's params and grid is empty.
struct ContractAttempt {
  std::vector<double> refined;
  HomotopyGrid grid;
};

ContractAttempt contract_attempt(const SampledPath& loop, const HomotopyConfig& cfg);

/// Merges requested params into the current set. RefinementExhausted once an
/// interval of the original sampling has been halved more than depth_cap
/// times.
std::vector<double> merge_params(const std::vector<double>& original,
                                 const std::vector<double>& current,
                                 const std::vector<double>& requested, const HomotopyConfig& cfg);

/// Normalizes a composite lift so that tr(L rho L*) = 1.
ComplexMatrix normalized_lift(const ComplexMatrix& l, const DensityMatrix& rho);

}  // namespace statespace::detail
