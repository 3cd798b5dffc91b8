#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace statespace::cli {

struct CheckResult {
  std::string name;
  double value = 0.0;  // worst observed deviation
  double tol = 0.0;
  bool pass = false;
  std::string note;
};

/// Seeded property suite over every module at small sizes.
std::vector<CheckResult> run_check_suite(std::uint64_t seed);

}  // namespace statespace::cli
