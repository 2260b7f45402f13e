#pragma once

// JSON experiment descriptions.
//
//   {
//     "system": "gsv_example" | {"controller": R, "plant": R, "binding": {...}},
//     "binding": {"d1": 0, ...},                     optional, overrides builtin
//     "uncertainty": {"type": "lp", "p": "inf" | 1 | 2 | ..., "n": 3}
//                  | {"type": "spectral", "blocks": [{"kind": "real-scalar",
//                       "multiplicity": 5}, {"kind": "complex-full",
//                       "rows": 4, "cols": 4}]}
//                  | {"type": "star-simplex", "vertices": [[...], ...],
//                     "center": [...]}                center defaults to centroid
//     "grid": {"a": 0, "b": 3, "l": 100} | {"radii": [...]},
//     "sampling": {"N": 2000} | {"chernoff": {"epsilon": 0.01, "delta": 0.01}},
//     "delta": 0.01,
//     "spec": {"atoms": [{"type": "stability"},
//                        {"type": "d-stability", "region": [{"half-plane": -1.5},
//                           {"disk": {"center": [re, im], "radius": 0.3}}]},
//                        {"type": "hinf", "gamma": 4.726},
//                        {"type": "step", "rise_max": 0.25, "settle_max": 3.5,
//                         "peak_max": 1.7}],
//              "rise": "10-90" | "0-90", "settling_band": 0.02,
//              "dt": 0.001, "horizon": 8},
//     "seed": 42, "workers": 1, "literal_estimator": false,
//     "outputs": {"csv": "...", "json": "...", "svg": "..."}
//   }
//
// R = {"gain": A, "numerator": [[A, ...], ...], "denominator": [[A, ...], ...]}
// with polynomial factors in descending degree and A either a number or
// {"constant": c, "terms": {"d1": 0.1}}.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "robustdeg/engine.hpp"
#include "robustdeg/errors.hpp"
#include "robustdeg/lti.hpp"
#include "robustdeg/statistics.hpp"
#include "robustdeg/uncertainty.hpp"

namespace robustdeg {

using Json = nlohmann::json;

struct LinspaceGrid {
  double a = 0.0;
  double b = 1.0;
  int l = 2;
  friend bool operator==(const LinspaceGrid&, const LinspaceGrid&) = default;
};

struct ChernoffSizing {
  double epsilon = 0.01;
  double delta = 0.01;
  friend bool operator==(const ChernoffSizing&, const ChernoffSizing&) = default;
};

struct OutputPaths {
  std::string csv;
  std::string json;
  std::string svg;
  friend bool operator==(const OutputPaths&, const OutputPaths&) = default;
};

inline constexpr const char* kBuiltinSystem = "gsv_example";

struct ExperimentConfig {
  std::string system_name = kBuiltinSystem;  // "custom" for inline systems
  UncertainSystem system = gsv_example();
  UncertaintySet uncertainty = LpBall(std::numeric_limits<double>::infinity(), 3);
  std::variant<LinspaceGrid, std::vector<double>> grid_source;
  RadiusGrid grid;
  std::optional<ChernoffSizing> chernoff;
  std::uint64_t samples_per_radius = 0;
  double delta = 0.01;
  RobustnessSpec spec;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool literal_estimator = false;
  OutputPaths outputs;

  EngineConfig engine_config() const {
    EngineConfig e{RunSettings{}, uncertainty, system, spec};
    e.run.samples_per_radius = samples_per_radius;
    e.run.delta = delta;
    e.run.grid = grid;
    e.run.seed = seed;
    e.run.workers = workers;
    e.run.literal_estimator = literal_estimator;
    return e;
  }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

namespace detail {

inline const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) {
    const std::string field = path.empty() ? key : path + "." + key;
    throw ConfigError("missing required field '" + field + "'", field);
  }
  return j.at(key);
}

template <class T>
T get_as(const Json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError("invalid value for '" + field + "': " + e.what(), field);
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback, const std::string& path) {
  if (!j.contains(key)) {
    return fallback;
  }
  return get_as<T>(j.at(key), path.empty() ? key : path + "." + key);
}

inline AffineExpr parse_affine(const Json& j, const std::string& field) {
  if (j.is_number()) {
    return AffineExpr(j.get<double>());
  }
  if (!j.is_object()) {
    throw ConfigError("affine expression must be a number or object", field);
  }
  std::vector<std::pair<std::string, double>> terms;
  if (j.contains("terms")) {
    for (const auto& [name, value] : j.at("terms").items()) {
      terms.emplace_back(name, get_as<double>(value, field + ".terms." + name));
    }
  }
  return AffineExpr(get_or<double>(j, "constant", 0.0, field), std::move(terms));
}

inline Json affine_to_json(const AffineExpr& e) {
  if (e.terms.empty()) {
    return e.constant;
  }
  Json terms = Json::object();
  for (const auto& [name, c] : e.terms) {
    terms[name] = c;
  }
  return {{"constant", e.constant}, {"terms", terms}};
}

inline std::vector<AffinePolynomial> parse_factors(const Json& j,
                                                   const std::string& field) {
  std::vector<AffinePolynomial> out;
  if (!j.is_array()) {
    throw ConfigError("'" + field + "' must be a list of factors", field);
  }
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string f = field + "[" + std::to_string(k) + "]";
    if (!j[k].is_array() || j[k].empty()) {
      throw ConfigError("factor must be a nonempty coefficient list", f);
    }
    AffinePolynomial poly;
    for (const auto& c : j[k]) {
      poly.push_back(parse_affine(c, f));
    }
    out.push_back(std::move(poly));
  }
  return out;
}

inline Json factors_to_json(const std::vector<AffinePolynomial>& factors) {
  Json out = Json::array();
  for (const auto& f : factors) {
    Json poly = Json::array();
    for (const auto& c : f) {
      poly.push_back(affine_to_json(c));
    }
    out.push_back(poly);
  }
  return out;
}

inline UncertainRational parse_rational(const Json& j, const std::string& field) {
  UncertainRational g;
  g.gain = j.contains("gain") ? parse_affine(j.at("gain"), field + ".gain")
                              : AffineExpr(1.0);
  g.numerator = j.contains("numerator")
                    ? parse_factors(j.at("numerator"), field + ".numerator")
                    : std::vector<AffinePolynomial>{};
  g.denominator = j.contains("denominator")
                      ? parse_factors(j.at("denominator"), field + ".denominator")
                      : std::vector<AffinePolynomial>{};
  return g;
}

inline Json rational_to_json(const UncertainRational& g) {
  return {{"gain", affine_to_json(g.gain)},
          {"numerator", factors_to_json(g.numerator)},
          {"denominator", factors_to_json(g.denominator)}};
}

inline std::map<std::string, int> parse_binding(const Json& j) {
  std::map<std::string, int> out;
  if (!j.is_object()) {
    throw ConfigError("binding must be an object", "binding");
  }
  for (const auto& [name, index] : j.items()) {
    out[name] = get_as<int>(index, "binding." + name);
  }
  return out;
}

inline BlockKind parse_block_kind(const std::string& s, const std::string& field) {
  for (auto k : {BlockKind::RealScalar, BlockKind::ComplexScalar,
                 BlockKind::RealFull, BlockKind::ComplexFull}) {
    if (s == to_string(k)) {
      return k;
    }
  }
  throw ConfigError("unknown block kind '" + s + "'", field);
}

inline Eigen::VectorXd parse_vector(const Json& j, const std::string& field) {
  const auto v = get_as<std::vector<double>>(j, field);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline Json vector_to_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline UncertaintySet parse_uncertainty(const Json& j) {
  const std::string type = get_as<std::string>(require(j, "type", "uncertainty"),
                                               "uncertainty.type");
  try {
    if (type == "lp") {
      const Json& p = require(j, "p", "uncertainty");
      double order = 0.0;
      if (p.is_string()) {
        const auto s = p.get<std::string>();
        if (s != "inf") {
          throw ConfigError("p must be a positive integer or \"inf\"", "uncertainty.p");
        }
        order = std::numeric_limits<double>::infinity();
      } else {
        order = get_as<double>(p, "uncertainty.p");
      }
      return LpBall(order, get_as<int>(require(j, "n", "uncertainty"), "uncertainty.n"));
    }
    if (type == "spectral") {
      const Json& blocks = require(j, "blocks", "uncertainty");
      std::vector<BlockSpec> specs;
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        const std::string f = "uncertainty.blocks[" + std::to_string(k) + "]";
        const Json& b = blocks[k];
        BlockSpec spec;
        spec.kind = parse_block_kind(
            get_as<std::string>(require(b, "kind", f), f + ".kind"), f + ".kind");
        spec.rows = get_or<int>(b, "rows", 1, f);
        spec.cols = get_or<int>(b, "cols", 1, f);
        spec.multiplicity = get_or<int>(b, "multiplicity", 1, f);
        specs.push_back(spec);
      }
      return SpectralBall(std::move(specs));
    }
    if (type == "star-simplex") {
      std::vector<Eigen::VectorXd> vertices;
      const Json& vs = require(j, "vertices", "uncertainty");
      for (std::size_t k = 0; k < vs.size(); ++k) {
        vertices.push_back(
            parse_vector(vs[k], "uncertainty.vertices[" + std::to_string(k) + "]"));
      }
      if (j.contains("center")) {
        return StarSimplex(std::move(vertices),
                           parse_vector(j.at("center"), "uncertainty.center"));
      }
      return StarSimplex::about_centroid(std::move(vertices));
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), "uncertainty");
  }
  throw ConfigError("unknown uncertainty type '" + type + "'", "uncertainty.type");
}

inline Json uncertainty_to_json(const UncertaintySet& set) {
  return std::visit(
      Overloaded{
          [](const LpBall& b) -> Json {
            Json p = b.is_box() ? Json("inf") : Json(b.p());
            return {{"type", "lp"}, {"p", p}, {"n", b.n()}};
          },
          [](const SpectralBall& b) -> Json {
            Json blocks = Json::array();
            for (const auto& s : b.blocks()) {
              blocks.push_back({{"kind", to_string(s.kind)},
                                {"rows", s.rows},
                                {"cols", s.cols},
                                {"multiplicity", s.multiplicity}});
            }
            return {{"type", "spectral"}, {"blocks", blocks}};
          },
          [](const StarSimplex& s) -> Json {
            Json vertices = Json::array();
            for (const auto& v : s.vertices()) {
              vertices.push_back(vector_to_json(v));
            }
            return {{"type", "star-simplex"},
                    {"vertices", vertices},
                    {"center", vector_to_json(s.center())}};
          }},
      set);
}

inline RobustnessSpec parse_spec(const Json& j) {
  RobustnessSpec spec;
  const Json& atoms = require(j, "atoms", "spec");
  if (!atoms.is_array()) {
    throw ConfigError("spec.atoms must be a list", "spec.atoms");
  }
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const std::string f = "spec.atoms[" + std::to_string(k) + "]";
    const Json& a = atoms[k];
    const auto type = get_as<std::string>(require(a, "type", f), f + ".type");
    if (type == "stability") {
      spec.stability = true;
    } else if (type == "d-stability") {
      DRegion region;
      for (const auto& p : require(a, "region", f)) {
        if (p.contains("half-plane")) {
          region.primitives.emplace_back(
              HalfPlane{get_as<double>(p.at("half-plane"), f + ".region")});
        } else if (p.contains("disk")) {
          const Json& d = p.at("disk");
          const auto c = get_as<std::vector<double>>(require(d, "center", f + ".region.disk"),
                                                     f + ".region.disk.center");
          if (c.size() != 2) {
            throw ConfigError("disk center must be [re, im]", f + ".region.disk.center");
          }
          region.primitives.emplace_back(
              Disk{Complex(c[0], c[1]),
                   get_as<double>(require(d, "radius", f + ".region.disk"),
                                  f + ".region.disk.radius")});
        } else {
          throw ConfigError("region primitive must be half-plane or disk", f + ".region");
        }
      }
      spec.d_stability = std::move(region);
    } else if (type == "hinf") {
      spec.hinf_bound = get_as<double>(require(a, "gamma", f), f + ".gamma");
    } else if (type == "step") {
      spec.step = StepBounds{get_as<double>(require(a, "rise_max", f), f + ".rise_max"),
                             get_as<double>(require(a, "settle_max", f), f + ".settle_max"),
                             get_as<double>(require(a, "peak_max", f), f + ".peak_max")};
    } else {
      throw ConfigError("unknown atom type '" + type + "'", f + ".type");
    }
  }
  const auto rise = get_or<std::string>(j, "rise", "10-90", "spec");
  if (rise == "10-90") {
    spec.rise = RiseDefinition::TenToNinety;
  } else if (rise == "0-90") {
    spec.rise = RiseDefinition::ZeroToNinety;
  } else {
    throw ConfigError("rise must be \"10-90\" or \"0-90\"", "spec.rise");
  }
  spec.settling_band = get_or<double>(j, "settling_band", 0.02, "spec");
  spec.dt = get_or<double>(j, "dt", 1e-3, "spec");
  spec.horizon = get_or<double>(j, "horizon", 8.0, "spec");
  spec.validate();
  return spec;
}

inline Json spec_to_json(const RobustnessSpec& spec) {
  Json atoms = Json::array();
  if (spec.stability) {
    atoms.push_back({{"type", "stability"}});
  }
  if (spec.d_stability) {
    Json region = Json::array();
    for (const auto& p : spec.d_stability->primitives) {
      std::visit(Overloaded{[&](const HalfPlane& h) {
                              region.push_back({{"half-plane", h.bound}});
                            },
                            [&](const Disk& d) {
                              region.push_back(
                                  {{"disk",
                                    {{"center", {d.center.real(), d.center.imag()}},
                                     {"radius", d.radius}}}});
                            }},
                 p);
    }
    atoms.push_back({{"type", "d-stability"}, {"region", region}});
  }
  if (spec.hinf_bound) {
    atoms.push_back({{"type", "hinf"}, {"gamma", *spec.hinf_bound}});
  }
  if (spec.step) {
    atoms.push_back({{"type", "step"},
                     {"rise_max", spec.step->rise_max},
                     {"settle_max", spec.step->settle_max},
                     {"peak_max", spec.step->peak_max}});
  }
  return {{"atoms", atoms},
          {"rise", to_string(spec.rise)},
          {"settling_band", spec.settling_band},
          {"dt", spec.dt},
          {"horizon", spec.horizon}};
}

// 1-based line and column of a byte offset.
inline std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                       std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace detail

/// Validated config from a parsed JSON document.
inline ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  ExperimentConfig cfg;

  const Json& system = detail::require(j, "system", "");
  if (system.is_string()) {
    cfg.system_name = system.get<std::string>();
    if (cfg.system_name != kBuiltinSystem) {
      throw ConfigError("unknown builtin system '" + cfg.system_name + "'", "system");
    }
    cfg.system = gsv_example();
  } else if (system.is_object()) {
    cfg.system_name = "custom";
    cfg.system.controller = detail::parse_rational(
        detail::require(system, "controller", "system"), "system.controller");
    cfg.system.plant = detail::parse_rational(
        detail::require(system, "plant", "system"), "system.plant");
    cfg.system.binding = system.contains("binding")
                             ? detail::parse_binding(system.at("binding"))
                             : std::map<std::string, int>{};
  } else {
    throw ConfigError("system must be a builtin name or an object", "system");
  }
  if (j.contains("binding")) {
    cfg.system.binding = detail::parse_binding(j.at("binding"));
  }

  cfg.uncertainty = detail::parse_uncertainty(detail::require(j, "uncertainty", ""));
  cfg.system.validate();
  const int coords = coordinate_count(cfg.uncertainty);
  for (const auto& [name, index] : cfg.system.binding) {
    if (index < 0 || index >= coords) {
      throw ConfigError("component '" + name + "' bound to coordinate " +
                            std::to_string(index) + " but the uncertainty has " +
                            std::to_string(coords) + " coordinates",
                        "binding");
    }
  }

  const Json& grid = detail::require(j, "grid", "");
  try {
    if (grid.contains("radii")) {
      auto radii = detail::get_as<std::vector<double>>(grid.at("radii"), "grid.radii");
      cfg.grid_source = radii;
      cfg.grid = RadiusGrid::from_radii(std::move(radii));
    } else {
      LinspaceGrid lin{detail::get_as<double>(detail::require(grid, "a", "grid"), "grid.a"),
                       detail::get_as<double>(detail::require(grid, "b", "grid"), "grid.b"),
                       detail::get_as<int>(detail::require(grid, "l", "grid"), "grid.l")};
      cfg.grid_source = lin;
      cfg.grid = make_grid(lin.a, lin.b, lin.l);
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), "grid");
  }

  const Json& sampling = detail::require(j, "sampling", "");
  const bool has_n = sampling.contains("N");
  const bool has_chernoff = sampling.contains("chernoff");
  if (has_n == has_chernoff) {
    throw ConfigError("sampling needs exactly one of 'N' or 'chernoff'", "sampling");
  }
  if (has_n) {
    const auto n = detail::get_as<std::int64_t>(sampling.at("N"), "sampling.N");
    if (n < 1) {
      throw ConfigError("sampling.N must be >= 1", "sampling.N");
    }
    cfg.samples_per_radius = static_cast<std::uint64_t>(n);
  } else {
    const Json& c = sampling.at("chernoff");
    ChernoffSizing sizing{
        detail::get_as<double>(detail::require(c, "epsilon", "sampling.chernoff"),
                               "sampling.chernoff.epsilon"),
        detail::get_as<double>(detail::require(c, "delta", "sampling.chernoff"),
                               "sampling.chernoff.delta")};
    try {
      cfg.samples_per_radius = chernoff_sample_size(sizing.epsilon, sizing.delta);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what(), "sampling.chernoff");
    }
    cfg.chernoff = sizing;
  }

  cfg.delta = detail::get_or<double>(j, "delta", 0.01, "");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    throw ConfigError("delta must lie in (0,1)", "delta");
  }
  cfg.spec = detail::parse_spec(detail::require(j, "spec", ""));
  cfg.seed = detail::get_or<std::uint64_t>(j, "seed", 0, "");
  const auto workers = detail::get_or<std::int64_t>(j, "workers", 1, "");
  if (workers < 1) {
    throw ConfigError("workers must be >= 1", "workers");
  }
  cfg.workers = static_cast<unsigned>(workers);
  cfg.literal_estimator = detail::get_or<bool>(j, "literal_estimator", false, "");
  if (j.contains("outputs")) {
    const Json& o = j.at("outputs");
    cfg.outputs.csv = detail::get_or<std::string>(o, "csv", "", "outputs");
    cfg.outputs.json = detail::get_or<std::string>(o, "json", "", "outputs");
    cfg.outputs.svg = detail::get_or<std::string>(o, "svg", "", "outputs");
  }
  return cfg;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, column] = detail::line_column(text, e.byte);
    throw ConfigError("parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(column) + ": " + e.what());
  }
  return config_from_json(j);
}

inline ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'", "config");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

inline Json to_json(const ExperimentConfig& cfg) {
  Json j;
  if (cfg.system_name == kBuiltinSystem) {
    j["system"] = kBuiltinSystem;
  } else {
    j["system"] = {{"controller", detail::rational_to_json(cfg.system.controller)},
                   {"plant", detail::rational_to_json(cfg.system.plant)}};
  }
  j["binding"] = cfg.system.binding;
  j["uncertainty"] = detail::uncertainty_to_json(cfg.uncertainty);
  std::visit(detail::Overloaded{
                 [&](const LinspaceGrid& g) {
                   j["grid"] = {{"a", g.a}, {"b", g.b}, {"l", g.l}};
                 },
                 [&](const std::vector<double>& radii) { j["grid"] = {{"radii", radii}}; }},
             cfg.grid_source);
  if (cfg.chernoff) {
    j["sampling"] = {{"chernoff", {{"epsilon", cfg.chernoff->epsilon},
                                   {"delta", cfg.chernoff->delta}}}};
  } else {
    j["sampling"] = {{"N", cfg.samples_per_radius}};
  }
  j["delta"] = cfg.delta;
  j["spec"] = detail::spec_to_json(cfg.spec);
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["literal_estimator"] = cfg.literal_estimator;
  j["outputs"] = {{"csv", cfg.outputs.csv},
                  {"json", cfg.outputs.json},
                  {"svg", cfg.outputs.svg}};
  return j;
}

}  // namespace robustdeg
