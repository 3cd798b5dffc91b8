#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "check_suite.hpp"
#include "json_io.hpp"
#include "statespace/linalg.hpp"
#include "statespace/metric.hpp"
#include "statespace/models.hpp"
#include "statespace/phases.hpp"

namespace statespace::cli {

namespace {

struct SchemaColumn {
  const char* name;
  const char* doc;
};

const std::map<std::string, std::vector<SchemaColumn>>& schemas() {
  static const std::map<std::string, std::vector<SchemaColumn>> table{
      {"contract",
       {{"t_index", "row of the homotopy grid"},
        {"s_index", "column of the homotopy grid"},
        {"t", "loop parameter"},
        {"s", "homotopy parameter"},
        {"consistency", "Frobenius distance between the stored state and the lift acting on column 0"},
        {"target_distance", "Frobenius distance to the basepoint"},
        {"purity", "tr(rho^2)"}}},
      {"disentangle",
       {{"site", "site contracted by this stage"},
        {"factorization_residual", "sup |psi(ab) - psi(a)psi(b)| after the stage"},
        {"marginal_deviation", "largest distance of an already contracted marginal from e_0"},
        {"t_samples", "rows of the stage grid"},
        {"s_samples", "columns of the stage grid"}}},
      {"pump",
       {{"w_index", "index into the octahedron points"},
        {"t_index", "index into the t grid"},
        {"w_x", "x component of w"},
        {"w_y", "y component of w"},
        {"w_z", "z component of w"},
        {"t", "pump parameter in [-1, 1]"},
        {"energy", "ground energy"},
        {"gap", "E_1 - E_0"},
        {"dist_next_t", "weak* distance to the next t point (0 on the last)"},
        {"dist_next_w", "weak* distance to the next w point, cyclically"}}},
  };
  return table;
}

std::string csv_header(const std::string& command) {
  std::string line;
  for (const auto& c : schemas().at(command)) {
    if (!line.empty()) line += ',';
    line += c.name;
  }
  return line + '\n';
}

std::string num(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      dims.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      fail(ErrorCode::InvalidArgument, "expected a comma-separated list of integers, got \"" + text + "\"");
    }
  }
  return dims;
}

VerifyOptions verify_options(const RunConfig& cfg) {
  VerifyOptions o;
  o.tol = cfg.verify_tol;
  o.continuity_tol = cfg.continuity_tol;
  o.metric_terms = cfg.metric_terms;
  return o;
}

std::string deviations_csv(const HomotopyGrid& grid) {
  std::string csv = csv_header("contract");
  for (const auto& c : cell_deviations(grid)) {
    csv += std::to_string(c.t_index) + ',' + std::to_string(c.s_index) + ',' +
           num(grid.t_params[c.t_index]) + ',' + num(grid.s_params[c.s_index]) + ',' +
           num(c.consistency) + ',' + num(c.target_distance) + ',' + num(c.purity) + '\n';
  }
  return csv;
}

const std::map<std::string, double RunConfig::*>& real_tolerances() {
  static const std::map<std::string, double RunConfig::*> table{
      {"verify", &RunConfig::verify_tol},
      {"continuity", &RunConfig::continuity_tol},
  };
  return table;
}

const std::map<std::string, double HomotopyConfig::*>& homotopy_tolerances() {
  static const std::map<std::string, double HomotopyConfig::*> table{
      {"delta_P", &HomotopyConfig::delta_P},       {"delta_pure", &HomotopyConfig::delta_pure},
      {"eps_edge", &HomotopyConfig::eps_edge},     {"delta_edge", &HomotopyConfig::delta_edge},
      {"theta_step", &HomotopyConfig::theta_step}, {"eta_step", &HomotopyConfig::eta_step},
      {"tau_ideal", &HomotopyConfig::tau_ideal},
  };
  return table;
}

}  // namespace

std::vector<std::string> tolerance_names() {
  std::vector<std::string> names{"depth_cap", "metric_terms"};
  for (const auto& [k, v] : real_tolerances()) names.push_back(k);
  for (const auto& [k, v] : homotopy_tolerances()) names.push_back(k);
  std::sort(names.begin(), names.end());
  return names;
}

void set_tolerance(RunConfig& cfg, const std::string& name, const std::string& value) {
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
  } catch (const std::logic_error&) {
    fail(ErrorCode::InvalidArgument, "tolerance " + name + " needs a number, got \"" + value + "\"");
  }
  if (!std::isfinite(v) || v < 0.0) fail(ErrorCode::InvalidArgument, "tolerance " + name + " must be finite and >= 0");
  if (auto it = real_tolerances().find(name); it != real_tolerances().end()) {
    cfg.*(it->second) = v;
  } else if (auto h = homotopy_tolerances().find(name); h != homotopy_tolerances().end()) {
    cfg.homotopy.*(h->second) = v;
  } else if (name == "depth_cap" || name == "metric_terms") {
    if (v != std::floor(v) || v < 1.0) fail(ErrorCode::InvalidArgument, name + " must be a positive integer");
    (name == "depth_cap" ? cfg.homotopy.depth_cap : cfg.metric_terms) = static_cast<std::size_t>(v);
  } else {
    fail(ErrorCode::InvalidArgument, "unknown tolerance \"" + name + "\"");
  }
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimMismatch:
    case ErrorCode::NotHermitian:
    case ErrorCode::InvalidState:
    case ErrorCode::NotUnit:
    case ErrorCode::BadSiteSet:
    case ErrorCode::SizeCap:
    case ErrorCode::SiteCountMismatch:
    case ErrorCode::NotIsometry:
    case ErrorCode::NotGapped:
    case ErrorCode::DegenerateGround:
    case ErrorCode::SingularOverlap:
    case ErrorCode::DomainError:
      return 2;
    case ErrorCode::RefinementExhausted:
      return 3;
    default:
      return 4;
  }
}

std::string error_json(const std::string& code, const std::string& message) {
  return serialize(Json{{"error", {{"code", code}, {"message", message}}}});
}

std::string csv_schema(const std::string& command) {
  if (schemas().count(command) == 0) return {};
  std::string text = csv_header(command);
  for (const auto& c : schemas().at(command)) text += std::string("  ") + c.name + ": " + c.doc + '\n';
  return text;
}

int cmd_contract(const RunConfig& cfg, const std::string& input, std::ostream& out) {
  const Json j = read_json_file(input);
  const SampledPath loop = path_from_json(j);
  if (!loop.is_loop()) fail(ErrorCode::InvalidArgument, "contract needs a loop");
  const HomotopyGrid grid = contract_loop_matrix(loop, cfg.homotopy);
  VerifyOptions opts = verify_options(cfg);
  opts.input = loop;
  const VerifyReport report = verify_homotopy(grid, opts);
  const Json rj = report_to_json(report, opts.tol, opts.continuity_tol);
  write_text_file(out_path(cfg, "grid.json"), serialize(grid_to_json(grid)));
  write_text_file(out_path(cfg, "report.json"), serialize(rj, 2));
  write_text_file(out_path(cfg, "deviations.csv"), deviations_csv(grid));
  out << serialize(rj, 2);
  return report.pass ? 0 : 4;
}

int cmd_disentangle(const RunConfig& cfg, const std::string& input, std::ostream& out) {
  const Json j = read_json_file(input);
  const SampledPath loop = path_from_json(j);
  const auto spec = lattice_from_json(j, cfg.size_cap);
  if (!spec) fail(ErrorCode::InvalidArgument, "disentangle needs a \"lattice\" field listing site dims");
  if (spec->total_dim() != loop.dim()) fail(ErrorCode::DimMismatch, "lattice does not match the state dimension");
  if (!loop.is_loop()) fail(ErrorCode::InvalidArgument, "disentangle needs a loop");
  const DisentangleResult res = disentangle_loop(loop, *spec, cfg.homotopy);
  VerifyOptions opts = verify_options(cfg);
  opts.input = loop;
  opts.spec = *spec;
  const VerifyReport report = verify_homotopy(res.grid, opts);
  Json rj = report_to_json(report, opts.tol, opts.continuity_tol);
  rj["max_factorization_residual"] = res.max_factorization_residual;
  std::string csv = csv_header("disentangle");
  for (const auto& st : res.stages) {
    csv += std::to_string(st.site) + ',' + num(st.factorization_residual) + ',' +
           num(st.marginal_deviation) + ',' + std::to_string(st.local.t_count()) + ',' +
           std::to_string(st.local.s_count()) + '\n';
  }
  write_text_file(out_path(cfg, "grid.json"), serialize(grid_to_json(res.grid)));
  write_text_file(out_path(cfg, "report.json"), serialize(rj, 2));
  write_text_file(out_path(cfg, "stages.csv"), csv);
  out << serialize(rj, 2);
  return report.pass && res.max_factorization_residual <= kFactorizationTol ? 0 : 4;
}

int cmd_pump(const RunConfig& cfg, std::size_t L, std::size_t n_t, std::ostream& out) {
  const auto rep = pump_family(octahedron_points(), pump_t_grid(n_t), L, cfg.metric_terms * 2);
  std::string csv = csv_header("pump");
  for (const auto& p : rep.points) {
    const Vec3& w = rep.ws[p.w_index];
    csv += std::to_string(p.w_index) + ',' + std::to_string(p.t_index) + ',' + num(w[0]) + ',' +
           num(w[1]) + ',' + num(w[2]) + ',' + num(p.t) + ',' + num(p.energy) + ',' + num(p.gap) +
           ',' + num(p.dist_next_t) + ',' + num(p.dist_next_w) + '\n';
  }
  write_text_file(out_path(cfg, "pump.csv"), csv);
  out << serialize(Json{{"L", rep.L},
                        {"w_points", rep.ws.size()},
                        {"t_points", rep.ts.size()},
                        {"min_gap", rep.min_gap},
                        {"continuity", rep.continuity},
                        {"pole_plus", rep.pole_plus},
                        {"pole_minus", rep.pole_minus}},
                   2);
  return 0;
}

int cmd_berry(const RunConfig& cfg, std::size_t n_theta, std::size_t n_phi, int band,
              std::ostream& out) {
  const auto bundle = berry_bundle(n_theta, n_phi, band);
  const std::string path = out_path(cfg, "bundle.json");
  write_text_file(path, serialize(bundle_to_json(bundle)));
  out << serialize(Json{{"bundle", path}, {"n_theta", n_theta}, {"n_phi", n_phi}, {"band", band}}, 2);
  return 0;
}

int cmd_chern(const RunConfig&, const std::string& bundle, std::ostream& out) {
  const auto res = chern_number(bundle_from_json(read_json_file(bundle)));
  out << serialize(Json{{"chern", res.chern},
                        {"residual", res.residual},
                        {"raw", res.raw},
                        {"max_plaquette_flux", res.max_plaquette_flux}},
                   2);
  return 0;
}

int cmd_flatten(const RunConfig&, const std::string& matrix, double t, std::ostream& out) {
  const ComplexMatrix a = matrix_from_json(read_json_file(matrix));
  const ComplexMatrix f = flatten(a, t);
  const RealVector before = eigenvalues(a), after = eigenvalues(f);
  out << serialize(Json{{"t", t},
                        {"spectrum_before", std::vector<double>(before.begin(), before.end())},
                        {"spectrum_after", std::vector<double>(after.begin(), after.end())},
                        {"index", neg_index(a)}},
                   2);
  return 0;
}

int cmd_k0(const RunConfig&, const std::string& monoid, const std::string& localize_at,
           std::ostream& out) {
  PresentedMonoid m = monoid_from_json(read_json_file(monoid));
  if (!localize_at.empty()) {
    const auto dims = parse_dims(localize_at);
    m = localize(m, Exponents(dims.begin(), dims.end()));
  }
  out << k0(m).to_string() << '\n';
  return 0;
}

int cmd_metric(const RunConfig& cfg, const std::string& a, const std::string& b,
               const std::string& lattice, std::ostream& out) {
  const DensityMatrix rho = state_from_json(read_json_file(a));
  const DensityMatrix sigma = state_from_json(read_json_file(b));
  if (rho.dim() != sigma.dim()) fail(ErrorCode::DimMismatch, "states have different dimensions");
  const LatticeSpec spec = lattice.empty() ? LatticeSpec({rho.dim()}, cfg.size_cap)
                                           : LatticeSpec(parse_dims(lattice), cfg.size_cap);
  if (spec.total_dim() != rho.dim()) fail(ErrorCode::DimMismatch, "lattice does not match the state dimension");
  const ObservableFamily fam(spec, cfg.metric_terms);
  const auto d = weakstar_dist(rho, sigma, fam, cfg.metric_terms);
  out << serialize(Json{{"value", d.value}, {"tail_bound", d.tail_bound}, {"terms", fam.size()}}, 2);
  return 0;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const auto results = run_check_suite(cfg.seed);
  bool all = true;
  out << std::left << std::setw(38) << "property" << std::setw(14) << "worst" << std::setw(10)
      << "tol" << "result\n";
  for (const auto& r : results) {
    all = all && r.pass;
    char worst[32], tol[32];
    std::snprintf(worst, sizeof worst, "%.3e", r.value);
    std::snprintf(tol, sizeof tol, "%.0e", r.tol);
    out << std::setw(38) << r.name << std::setw(14) << worst << std::setw(10) << tol
        << (r.pass ? "PASS" : "FAIL");
    if (!r.note.empty()) out << "  " << r.note;
    out << '\n';
  }
  out << (all ? "all properties pass\n" : "some properties FAILED\n");
  return all ? 0 : 4;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::vector<std::string> rest;
  try {
    for (const auto& a : args) {
      static const std::string prefix = "--tol.";
      if (a.rfind(prefix, 0) != 0) {
        rest.push_back(a);
        continue;
      }
      const auto eq = a.find('=');
      if (eq == std::string::npos) fail(ErrorCode::InvalidArgument, "expected --tol.<name>=<value>, got " + a);
      set_tolerance(cfg, a.substr(prefix.size(), eq - prefix.size()), a.substr(eq + 1));
    }
  } catch (const Error& e) {
    err << error_json(std::string(to_string(e.code())), e.what());
    return exit_code_for(e.code());
  }

  CLI::App app{"Numerical state-space toolkit for quantum lattice systems"};
  app.set_help_all_flag("--help-all");
  app.require_subcommand(1);
  bool schema = false;  // handled before parsing
  app.add_option("--seed", cfg.seed, "seed of the mt19937_64 generator")->capture_default_str();
  app.add_option("--out", cfg.out_dir, "directory for artifacts")->capture_default_str();
  app.add_option("--cap", cfg.size_cap, "largest allowed total Hilbert space dimension")->capture_default_str();
  app.add_flag("--schema", schema, "print the CSV columns of the subcommand and exit");
  app.footer("Tolerances: --tol.<name>=<value> with name one of: " + [] {
    std::string s;
    for (const auto& n : tolerance_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }());

  std::string input, input_b, lattice, localize_at;
  std::size_t L = 8, n_t = 24, n_theta = 24, n_phi = 24;
  int band = 0;
  double t = 1.0;

  auto* contract = app.add_subcommand("contract", "contract a loop of states at |e_0><e_0|");
  contract->add_option("input", input, "path JSON")->required();
  auto* disent = app.add_subcommand("disentangle", "contract a loop on a product lattice site by site");
  disent->add_option("input", input, "path JSON with a lattice field")->required();
  auto* pump = app.add_subcommand("pump", "gap and continuity over the pump family");
  pump->add_option("--L", L, "chain length (even, 2..12)")->capture_default_str();
  pump->add_option("--nt", n_t, "number of t points")->capture_default_str();
  auto* berry = app.add_subcommand("berry", "write the ground projector bundle of the Berry model");
  berry->add_option("--n-theta", n_theta)->capture_default_str();
  berry->add_option("--n-phi", n_phi)->capture_default_str();
  berry->add_option("--band", band, "0 lower, 1 upper")->check(CLI::Range(0, 1))->capture_default_str();
  auto* chern = app.add_subcommand("chern", "Chern number of a bundle JSON");
  chern->add_option("bundle", input)->required();
  auto* flat = app.add_subcommand("flatten", "spectral flattening of a Hermitian matrix JSON");
  flat->add_option("matrix", input)->required();
  flat->add_option("--t", t, "flattening parameter in [0, 1]")->capture_default_str();
  auto* k0c = app.add_subcommand("k0", "group completion of a presented monoid");
  k0c->add_option("monoid", input)->required();
  k0c->add_option("--localize", localize_at, "comma-separated element to invert");
  auto* metric = app.add_subcommand("metric", "weak* distance between two states");
  metric->add_option("a", input)->required();
  metric->add_option("b", input_b)->required();
  metric->add_option("--lattice", lattice, "comma-separated site dims");
  auto* check = app.add_subcommand("check", "run the property suite");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  if (std::find(rest.begin(), rest.end(), "--schema") != rest.end()) {
    for (const auto& a : rest) {
      if (schemas().count(a) != 0) {
        out << csv_schema(a);
        return 0;
      }
    }
    err << error_json("ParseError", "--schema needs one of: contract, disentangle, pump");
    return 2;
  }

  std::vector<std::string> reversed(rest.rbegin(), rest.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << error_json("ParseError", e.what());
    return 2;
  }

  const auto chosen = app.get_subcommands();
  try {
    auto* sub = chosen.front();
    if (sub == contract) return cmd_contract(cfg, input, out);
    if (sub == disent) return cmd_disentangle(cfg, input, out);
    if (sub == pump) return cmd_pump(cfg, L, n_t, out);
    if (sub == berry) return cmd_berry(cfg, n_theta, n_phi, band, out);
    if (sub == chern) return cmd_chern(cfg, input, out);
    if (sub == flat) return cmd_flatten(cfg, input, t, out);
    if (sub == k0c) return cmd_k0(cfg, input, localize_at, out);
    if (sub == metric) return cmd_metric(cfg, input, input_b, lattice, out);
    if (sub == check) return cmd_check(cfg, out);
  } catch (const Error& e) {
    err << error_json(std::string(to_string(e.code())), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << error_json("Internal", e.what());
    return 4;
  }
  return 4;
}

}  // namespace statespace::cli
