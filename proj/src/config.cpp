#include "dmnls/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace dmnls {

using nlohmann::json;

namespace {

json map_to_json(const DispersionMap& map) {
  json segs = json::array();
  for (const Segment& s : map.segments()) {
    segs.push_back(json::array({s.duration, s.value}));
  }
  return json{{"segments", segs}};
}

DispersionMap map_from_json(const json& j) {
  if (j.contains("gamma_plus") || j.contains("gamma_minus") ||
      j.contains("t_plus")) {
    double gp = j.at("gamma_plus").get<double>();
    double gm = j.at("gamma_minus").get<double>();
    double tp = j.at("t_plus").get<double>();
    return DispersionMap::two_step(gp, gm, tp);
  }
  std::vector<Segment> segments;
  for (const json& row : j.at("segments")) {
    if (!row.is_array() || row.size() != 2) {
      throw std::invalid_argument("map segment rows must be [duration, value]");
    }
    segments.push_back({row[0].get<double>(), row[1].get<double>()});
  }
  return DispersionMap(std::move(segments));
}

json grid_to_json(const GridSpec& g) {
  return json{{"kind", g.kind == GridSpec::Kind::torus ? "torus" : "radial"},
              {"points", g.points},
              {"extent", g.extent}};
}

GridSpec grid_from_json(const json& j) {
  GridSpec g;
  std::string kind = j.value("kind", "torus");
  if (kind == "torus") {
    g.kind = GridSpec::Kind::torus;
  } else if (kind == "radial") {
    g.kind = GridSpec::Kind::radial;
  } else {
    throw std::invalid_argument("grid kind must be torus or radial");
  }
  g.points = j.value("points", std::size_t{1024});
  g.extent = j.value("extent", 32.0);
  return g;
}

json datum_to_json(const DatumSpec& d) {
  return json{{"family", d.family},
              {"amplitude", d.amplitude},
              {"width", d.width},
              {"center", d.center},
              {"modulation", d.modulation}};
}

DatumSpec datum_from_json(const json& j) {
  DatumSpec d;
  d.family = j.value("family", "gaussian");
  if (d.family != "gaussian" && d.family != "ground_state") {
    throw std::invalid_argument("datum family must be gaussian or ground_state");
  }
  d.amplitude = j.value("amplitude", 1.0);
  d.width = j.value("width", 1.0);
  d.center = j.value("center", 0.0);
  d.modulation = j.value("modulation", 0.0);
  return d;
}

double exponent_from_json(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") {
      return std::numeric_limits<double>::infinity();
    }
    throw std::invalid_argument("exponent strings must be \"inf\"");
  }
  return j.get<double>();
}

json exponent_to_json(double v) {
  if (std::isinf(v)) return json("inf");
  return json(v);
}

}  // namespace

std::string serialize_map(const DispersionMap& map) {
  return map_to_json(map).dump();
}

DispersionMap parse_map_text(const std::string& json_text) {
  return map_from_json(json::parse(json_text));
}

namespace {

json spec_to_json(const ExperimentSpec& s) {
  json j{{"kind", to_string(s.kind)},
         {"map", map_to_json(s.map)},
         {"grid", grid_to_json(s.grid)},
         {"datum", datum_to_json(s.datum)},
         {"seed", s.seed},
         {"dt_max", s.dt_max}};
  switch (s.kind) {
    case ExperimentKind::strichartz:
    case ExperimentKind::inhomogeneous:
      j["q"] = exponent_to_json(s.q);
      j["r"] = exponent_to_json(s.r);
      j["t_window"] = s.t_window;
      j["ensemble"] = s.ensemble;
      j["c_str"] = s.c_str;
      break;
    case ExperimentKind::scattering:
      j["eta"] = s.eta;
      j["t_final"] = s.t_final;
      j["checkpoints"] = s.checkpoints;
      break;
    case ExperimentKind::blowup:
      j["lambda"] = s.lambda;
      j["delta"] = s.delta;
      j["h1_growth_factor"] = s.h1_growth_factor;
      break;
    case ExperimentKind::soliton:
      j["t_final"] = s.t_final;
      break;
    case ExperimentKind::partition:
      j["n_min"] = s.n_min;
      j["n_max"] = s.n_max;
      break;
  }
  return j;
}

// Validation that needs the whole spec (exponent scaling, admissibility,
// kind-specific requirements).  Appends messages; returns nullopt on error.
std::optional<ExperimentSpec> spec_from_json(const json& j,
                                             std::vector<std::string>& errors) {
  std::size_t before = errors.size();
  ExperimentSpec s;
  try {
    s.kind = experiment_kind_from_string(j.at("kind").get<std::string>());
  } catch (const std::exception& e) {
    errors.emplace_back(e.what());
    return std::nullopt;
  }
  const std::string where = to_string(s.kind) + " spec: ";

  try {
    if (j.contains("map")) s.map = map_from_json(j.at("map"));
  } catch (const std::exception& e) {
    errors.push_back(where + "invalid map: " + e.what());
  }
  try {
    if (j.contains("grid")) s.grid = grid_from_json(j.at("grid"));
  } catch (const std::exception& e) {
    errors.push_back(where + "invalid grid: " + e.what());
  }
  try {
    if (j.contains("datum")) s.datum = datum_from_json(j.at("datum"));
  } catch (const std::exception& e) {
    errors.push_back(where + "invalid datum: " + e.what());
  }
  s.seed = j.value("seed", std::uint64_t{0});
  s.dt_max = j.value("dt_max", s.dt_max);
  if (!(s.dt_max > 0.0)) errors.push_back(where + "dt_max must be positive");

  // dimension may be overridden to validate exponent triples (e.g. d=2)
  int dimension = j.value("dimension", s.grid.dimension());

  switch (s.kind) {
    case ExperimentKind::strichartz:
    case ExperimentKind::inhomogeneous: {
      try {
        if (j.contains("q")) s.q = exponent_from_json(j.at("q"));
        if (j.contains("r")) s.r = exponent_from_json(j.at("r"));
      } catch (const std::exception& e) {
        errors.push_back(where + e.what());
      }
      s.t_window = j.value("t_window", s.t_window);
      s.ensemble = j.value("ensemble", s.ensemble);
      s.c_str = j.value("c_str", s.c_str);
      if (dimension == 2 && s.q == 2.0 && std::isinf(s.r)) {
        errors.push_back(where +
                         "forbidden endpoint triple (d,q,r) = (2,2,infinity)");
      } else {
        double lhs = (std::isinf(s.q) ? 0.0 : 2.0 / s.q) +
                     (std::isinf(s.r) ? 0.0 : dimension / s.r);
        if (!(s.q >= 2.0) || !(s.r >= 2.0) ||
            std::abs(lhs - dimension / 2.0) > 1e-9) {
          errors.push_back(where + "exponent pair (q, r) is not admissible");
        }
      }
      if (s.ensemble < 1) errors.push_back(where + "ensemble must be positive");
      if (!(s.t_window > 0.0)) errors.push_back(where + "t_window must be positive");
      if (!s.map.is_admissible()) {
        errors.push_back(where + "not admissible: " +
                         s.map.admissibility().reason);
      }
      break;
    }
    case ExperimentKind::scattering: {
      s.eta = j.value("eta", s.eta);
      s.t_final = j.value("t_final", s.t_final);
      s.checkpoints = j.value("checkpoints", s.checkpoints);
      if (!(s.eta > 0.0)) errors.push_back(where + "eta must be positive");
      if (!(s.t_final > 0.0)) errors.push_back(where + "t_final must be positive");
      if (s.checkpoints < 3) {
        errors.push_back(where + "needs at least 3 checkpoints");
      }
      if (!s.map.is_admissible()) {
        errors.push_back(where + "not admissible: " +
                         s.map.admissibility().reason);
      }
      break;
    }
    case ExperimentKind::blowup: {
      s.lambda = j.value("lambda", s.lambda);
      s.delta = j.value("delta", s.delta);
      s.h1_growth_factor = j.value("h1_growth_factor", s.h1_growth_factor);
      if (!(s.h1_growth_factor > 1.0)) {
        errors.push_back(where + "h1_growth_factor must exceed 1");
      }
      if (s.grid.kind != GridSpec::Kind::radial) {
        errors.push_back(where + "needs a radial grid");
      }
      if (s.map.segments().front().value <= 0.0) {
        errors.push_back(where + "first dispersion segment must be focusing");
      }
      if (s.lambda < 0.0) errors.push_back(where + "lambda must be positive or 0 (auto)");
      break;
    }
    case ExperimentKind::soliton: {
      s.t_final = j.value("t_final", 0.25);
      if (s.grid.kind != GridSpec::Kind::radial) {
        errors.push_back(where + "needs a radial grid");
      }
      if (s.map.segments().front().value <= 0.0) {
        errors.push_back(where + "first dispersion segment must be focusing");
      }
      break;
    }
    case ExperimentKind::partition: {
      s.n_min = j.value("n_min", s.n_min);
      s.n_max = j.value("n_max", s.n_max);
      if (s.n_min > s.n_max) errors.push_back(where + "needs n_min <= n_max");
      if (!s.map.is_admissible()) {
        errors.push_back(where + "not admissible: " +
                         s.map.admissibility().reason);
      }
      break;
    }
  }

  if (errors.size() != before) return std::nullopt;
  return s;
}

}  // namespace

ConfigParseResult parse_config_text(const std::string& json_text) {
  ConfigParseResult result;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    result.errors.push_back(std::string("invalid JSON: ") + e.what());
    return result;
  }

  RunConfig cfg;
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.out_dir = j.value("out_dir", std::string("out"));
  cfg.quiet = j.value("quiet", false);
  cfg.groundstate_cache = j.value("groundstate_cache", std::string());

  if (!j.contains("experiments") || !j.at("experiments").is_array() ||
      j.at("experiments").empty()) {
    result.errors.emplace_back("config needs a nonempty experiments array");
  } else {
    for (const json& je : j.at("experiments")) {
      auto spec = spec_from_json(je, result.errors);
      if (spec) {
        if (spec->seed == 0) spec->seed = cfg.seed;
        cfg.experiments.push_back(std::move(*spec));
      }
    }
  }

  if (result.errors.empty()) result.config = std::move(cfg);
  return result;
}

ConfigParseResult parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ConfigParseResult result;
    result.errors.push_back("cannot open config file: " + path);
    return result;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string serialize_spec(const ExperimentSpec& spec) {
  return spec_to_json(spec).dump();
}

std::string serialize_config(const RunConfig& config) {
  json j{{"seed", config.seed},
         {"out_dir", config.out_dir},
         {"quiet", config.quiet},
         {"groundstate_cache", config.groundstate_cache}};
  json exps = json::array();
  for (const ExperimentSpec& s : config.experiments) exps.push_back(spec_to_json(s));
  j["experiments"] = exps;
  return j.dump(2);
}

}  // namespace dmnls
