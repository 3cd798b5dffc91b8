#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "statespace/error.hpp"
#include "statespace/homotopy.hpp"
#include "statespace/lattice.hpp"

namespace statespace::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  HomotopyConfig homotopy;
  double verify_tol = 1e-6;
  double continuity_tol = 0.5;
  std::size_t metric_terms = 32;
  std::size_t size_cap = kDefaultSizeCap;
  std::string out_dir = ".";
};

/// Sets one named tolerance. InvalidArgument for an unknown name or a value
/// that does not parse.
void set_tolerance(RunConfig& cfg, const std::string& name, const std::string& value);
std::vector<std::string> tolerance_names();

/// 0 success, 2 input error, 3 refinement failure, 4 everything else.
int exit_code_for(ErrorCode code) noexcept;
/// {"error": {"code": ..., "message": ...}}
std::string error_json(const std::string& code, const std::string& message);

/// CSV header of the plot data written by a subcommand; empty if it writes
/// none.
std::string csv_schema(const std::string& command);

int cmd_contract(const RunConfig& cfg, const std::string& input, std::ostream& out);
int cmd_disentangle(const RunConfig& cfg, const std::string& input, std::ostream& out);
int cmd_pump(const RunConfig& cfg, std::size_t L, std::size_t n_t, std::ostream& out);
int cmd_berry(const RunConfig& cfg, std::size_t n_theta, std::size_t n_phi, int band,
              std::ostream& out);
int cmd_chern(const RunConfig& cfg, const std::string& bundle, std::ostream& out);
int cmd_flatten(const RunConfig& cfg, const std::string& matrix, double t, std::ostream& out);
int cmd_k0(const RunConfig& cfg, const std::string& monoid, const std::string& localize_at,
           std::ostream& out);
int cmd_metric(const RunConfig& cfg, const std::string& a, const std::string& b,
               const std::string& lattice, std::ostream& out);
int cmd_check(const RunConfig& cfg, std::ostream& out);

/// Full command line (argv without the program name). Errors go to err as
/// error JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace statespace::cli
