#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "statespace/homotopy.hpp"
#include "statespace/linalg.hpp"
#include "statespace/models.hpp"
#include "statespace/phases.hpp"
#include "statespace/states.hpp"

namespace statespace::cli {

using Json = nlohmann::json;

/// Canonical text: object keys sorted, floats with 17 significant digits,
/// -0 written as 0. indent < 0 gives one line.
std::string serialize(const Json& j, int indent = -1);
/// ParseError on malformed input.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);
DensityMatrix state_from_json(const Json& j);

/// {"params": [...], "states": [matrix...], "loop": bool}; an optional
/// "lattice" array of site dims is kept alongside.
Json path_to_json(const SampledPath& p, const std::optional<LatticeSpec>& lattice = {});
SampledPath path_from_json(const Json& j);
std::optional<LatticeSpec> lattice_from_json(const Json& j, std::size_t size_cap);

/// {"t_params", "s_params", "states", "lift", "final_column_exempt",
/// "stage_ends", "stage_labels"}; states and lift are [t][s] arrays.
Json grid_to_json(const HomotopyGrid& g);
HomotopyGrid grid_from_json(const Json& j);

Json report_to_json(const VerifyReport& r, double tol, double continuity_tol);

/// {"n_theta", "n_phi", "north", "south", "rows": [[matrix...]...]}
Json bundle_to_json(const GroundBundle& b);
GroundBundle bundle_from_json(const Json& j);

/// {"n_gens": k, "relations": [[u, v], ...]}
Json monoid_to_json(const PresentedMonoid& m);
PresentedMonoid monoid_from_json(const Json& j);
Exponents exponents_from_json(const Json& j);

}  // namespace statespace::cli
