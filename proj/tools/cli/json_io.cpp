#include "json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "statespace/error.hpp"

namespace statespace::cli {

namespace {

void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "cannot serialize a non-finite number");
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void newline(std::string& out, int indent, int level) {
  if (indent < 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent * level), ' ');
}

void write(std::string& out, const Json& j, int indent, int level) {
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(out, indent, level + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write(out, it.value(), indent, level + 1);
      }
      newline(out, indent, level);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(out, indent, level + 1);
        write(out, e, indent, level + 1);
      }
      if (!flat) newline(out, indent, level);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    fail(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

std::vector<double> doubles(const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::ParseError, std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) fail(ErrorCode::ParseError, std::string(what) + " must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    fail(ErrorCode::ParseError, std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

std::string serialize(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  out += '\n';
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const std::size_t rows = count(field(j, "rows"), "rows");
  const std::size_t cols = count(field(j, "cols"), "cols");
  const auto re = doubles(field(j, "re"), "re");
  const auto im = doubles(field(j, "im"), "im");
  if (re.size() != rows * cols || im.size() != rows * cols) {
    fail(ErrorCode::ParseError, "matrix entry count does not match rows*cols");
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          Complex{re[i * cols + k], im[i * cols + k]};
    }
  }
  if (!m.allFinite()) fail(ErrorCode::ParseError, "matrix has non-finite entries");
  return m;
}

DensityMatrix state_from_json(const Json& j) { return DensityMatrix::from_matrix(matrix_from_json(j)); }

Json path_to_json(const SampledPath& p, const std::optional<LatticeSpec>& lattice) {
  Json states = Json::array();
  for (const auto& s : p.states()) states.push_back(matrix_to_json(s.matrix()));
  Json j{{"params", p.params()}, {"states", std::move(states)}, {"loop", p.is_loop()}};
  if (lattice) j["lattice"] = std::vector<std::size_t>(lattice->dims().begin(), lattice->dims().end());
  return j;
}

SampledPath path_from_json(const Json& j) {
  auto params = doubles(field(j, "params"), "params");
  const Json& st = field(j, "states");
  if (!st.is_array()) fail(ErrorCode::ParseError, "states must be an array");
  std::vector<DensityMatrix> states;
  for (const auto& s : st) states.push_back(state_from_json(s));
  const bool loop = j.contains("loop") ? j.at("loop").get<bool>() : true;
  return SampledPath(std::move(params), std::move(states), loop);
}

std::optional<LatticeSpec> lattice_from_json(const Json& j, std::size_t size_cap) {
  if (!j.is_object() || !j.contains("lattice")) return std::nullopt;
  std::vector<std::size_t> dims;
  for (const auto& d : j.at("lattice")) dims.push_back(count(d, "lattice dim"));
  return LatticeSpec(std::move(dims), size_cap);
}

Json grid_to_json(const HomotopyGrid& g) {
  Json states = Json::array(), lift = Json::array();
  for (std::size_t t = 0; t < g.t_count(); ++t) {
    Json srow = Json::array(), lrow = Json::array();
    for (std::size_t s = 0; s < g.s_count(); ++s) {
      srow.push_back(matrix_to_json(g.states[t][s].matrix()));
      lrow.push_back(matrix_to_json(g.lift[t][s]));
    }
    states.push_back(std::move(srow));
    lift.push_back(std::move(lrow));
  }
  return Json{{"t_params", g.t_params},
              {"s_params", g.s_params},
              {"states", std::move(states)},
              {"lift", std::move(lift)},
              {"final_column_exempt", g.final_column_exempt},
              {"stage_ends", g.stage_ends},
              {"stage_labels", g.stage_labels}};
}

HomotopyGrid grid_from_json(const Json& j) {
  HomotopyGrid g;
  g.t_params = doubles(field(j, "t_params"), "t_params");
  g.s_params = doubles(field(j, "s_params"), "s_params");
  const Json& st = field(j, "states");
  const Json& lf = field(j, "lift");
  if (st.size() != g.t_params.size() || lf.size() != g.t_params.size()) {
    fail(ErrorCode::ParseError, "grid rows do not match t_params");
  }
  g.states.resize(g.t_params.size());
  g.lift.resize(g.t_params.size());
  for (std::size_t t = 0; t < g.t_params.size(); ++t) {
    if (st[t].size() != g.s_params.size() || lf[t].size() != g.s_params.size()) {
      fail(ErrorCode::ParseError, "grid columns do not match s_params");
    }
    for (std::size_t s = 0; s < g.s_params.size(); ++s) {
      g.states[t].push_back(DensityMatrix::verbatim(matrix_from_json(st[t][s])));
      g.lift[t].push_back(matrix_from_json(lf[t][s]));
    }
  }
  g.final_column_exempt = j.value("final_column_exempt", false);
  if (j.contains("stage_ends")) g.stage_ends = j.at("stage_ends").get<std::vector<std::size_t>>();
  if (j.contains("stage_labels")) g.stage_labels = j.at("stage_labels").get<std::vector<std::string>>();
  return g;
}

namespace {

Json deviation_json(const Deviation& d) {
  return Json{{"value", d.value}, {"t_index", d.t}, {"s_index", d.s}};
}

}  // namespace

Json report_to_json(const VerifyReport& r, double tol, double continuity_tol) {
  return Json{{"pass", r.pass},
              {"tol", tol},
              {"continuity_tol", continuity_tol},
              {"s0_lift", deviation_json(r.s0_lift)},
              {"s0_column", deviation_json(r.s0_column)},
              {"lift_consistency", deviation_json(r.lift_consistency)},
              {"boundary", deviation_json(r.boundary)},
              {"final_column", deviation_json(r.final_column)},
              {"continuity", deviation_json(r.continuity)}};
}

Json bundle_to_json(const GroundBundle& b) {
  Json rows = Json::array();
  for (const auto& row : b.rows) {
    Json r = Json::array();
    for (const auto& p : row) r.push_back(matrix_to_json(p));
    rows.push_back(std::move(r));
  }
  return Json{{"n_theta", b.n_theta},
              {"n_phi", b.n_phi},
              {"north", matrix_to_json(b.north)},
              {"south", matrix_to_json(b.south)},
              {"rows", std::move(rows)}};
}

GroundBundle bundle_from_json(const Json& j) {
  GroundBundle b;
  b.n_theta = count(field(j, "n_theta"), "n_theta");
  b.n_phi = count(field(j, "n_phi"), "n_phi");
  b.north = matrix_from_json(field(j, "north"));
  b.south = matrix_from_json(field(j, "south"));
  const Json& rows = field(j, "rows");
  if (!rows.is_array()) fail(ErrorCode::ParseError, "rows must be an array");
  for (const auto& row : rows) {
    std::vector<ComplexMatrix> r;
    for (const auto& p : row) r.push_back(matrix_from_json(p));
    b.rows.push_back(std::move(r));
  }
  return b;
}

Exponents exponents_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "exponent vector must be an array");
  Exponents out;
  for (const auto& e : j) out.push_back(count(e, "exponent"));
  return out;
}

Json monoid_to_json(const PresentedMonoid& m) {
  Json rel = Json::array();
  for (const auto& [u, v] : m.relations) rel.push_back(Json::array({u, v}));
  return Json{{"n_gens", m.n_gens}, {"relations", std::move(rel)}};
}

PresentedMonoid monoid_from_json(const Json& j) {
  PresentedMonoid m;
  m.n_gens = count(field(j, "n_gens"), "n_gens");
  const Json& rel = j.contains("relations") ? j.at("relations") : Json::array();
  for (const auto& r : rel) {
    if (!r.is_array() || r.size() != 2) fail(ErrorCode::ParseError, "a relation is a pair [u, v]");
    m.relations.emplace_back(exponents_from_json(r[0]), exponents_from_json(r[1]));
  }
  m.validate();
  return m;
}

}  // namespace statespace::cli
