#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dmnls/config.hpp"
#include "dmnls/io.hpp"
#include "dmnls/random.hpp"

using namespace dmnls;
namespace fs = std::filesystem;

namespace {

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool mentions(const std::vector<std::string>& errors, const std::string& what) {
  for (const std::string& e : errors) {
    if (e.find(what) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("map serialization round trip") {
  DispersionMap map({{0.25, 1.5}, {0.25, -2.0}, {0.5, 0.75}});
  DispersionMap back = parse_map_text(serialize_map(map));
  REQUIRE(back.segments().size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.segments()[i].duration == map.segments()[i].duration);
    CHECK(back.segments()[i].value == map.segments()[i].value);
  }

  // two-segment shorthand: gamma_minus enters negated
  DispersionMap short_form =
      parse_map_text(R"({"gamma_plus": 2.0, "gamma_minus": 1.0, "t_plus": 0.5})");
  CHECK(short_form.segments()[0].value == 2.0);
  CHECK(short_form.segments()[1].value == -1.0);
  CHECK(short_form.segments()[0].duration == 0.5);

  CHECK_THROWS(parse_map_text(R"({"segments": [[0.5, 1.0], [0.5, 0.0]]})"));
  CHECK_THROWS(parse_map_text(R"({"segments": [[1.0]]})"));
}

TEST_CASE("minimal valid blowup config") {
  const std::string text = R"({
    "seed": 7,
    "experiments": [
      {"kind": "blowup",
       "map": {"gamma_plus": 1.0, "gamma_minus": 1.0, "t_plus": 0.5},
       "grid": {"kind": "radial", "points": 1024, "extent": 8.0},
       "datum": {"family": "ground_state", "amplitude": 1.2}}
    ]
  })";
  ConfigParseResult parsed = parse_config_text(text);
  REQUIRE(parsed.ok());
  REQUIRE(parsed.config->experiments.size() == 1);
  const ExperimentSpec& s = parsed.config->experiments[0];
  CHECK(s.kind == ExperimentKind::blowup);
  CHECK(s.seed == 7);  // inherits the run seed
  CHECK(s.datum.amplitude == 1.2);
  CHECK(s.lambda == 0.0);  // auto
}

TEST_CASE("forbidden endpoint triple is rejected by name") {
  const std::string text = R"({
    "experiments": [
      {"kind": "strichartz",
       "map": {"gamma_plus": 2.0, "gamma_minus": 1.0, "t_plus": 0.5},
       "dimension": 2,
       "q": 2.0, "r": "inf"}
    ]
  })";
  ConfigParseResult parsed = parse_config_text(text);
  CHECK_FALSE(parsed.ok());
  CHECK(mentions(parsed.errors, "forbidden endpoint triple"));
}

TEST_CASE("zero-average strichartz map is rejected") {
  const std::string text = R"({
    "experiments": [
      {"kind": "strichartz",
       "map": {"segments": [[0.5, 1.0], [0.5, -1.0]]},
       "q": 8.0, "r": 4.0}
    ]
  })";
  ConfigParseResult parsed = parse_config_text(text);
  CHECK_FALSE(parsed.ok());
  CHECK(mentions(parsed.errors, "not admissible"));
}

TEST_CASE("validation reports every error, not just the first") {
  const std::string text = R"({
    "experiments": [
      {"kind": "strichartz",
       "map": {"segments": [[0.5, 1.0], [0.5, -1.0]]},
       "q": 8.0, "r": 3.0, "ensemble": 0},
      {"kind": "scattering",
       "map": {"gamma_plus": 2.0, "gamma_minus": 1.0, "t_plus": 0.5},
       "checkpoints": 1}
    ]
  })";
  ConfigParseResult parsed = parse_config_text(text);
  CHECK_FALSE(parsed.ok());
  CHECK(parsed.errors.size() >= 3);
  CHECK(mentions(parsed.errors, "not admissible"));
  CHECK(mentions(parsed.errors, "exponent pair"));
  CHECK(mentions(parsed.errors, "ensemble"));
  CHECK(mentions(parsed.errors, "checkpoints"));
}

TEST_CASE("missing file and malformed JSON") {
  ConfigParseResult missing = parse_config("/nonexistent/config.json");
  CHECK_FALSE(missing.ok());
  CHECK(mentions(missing.errors, "cannot open"));

  ConfigParseResult bad = parse_config_text("{not json");
  CHECK_FALSE(bad.ok());
  CHECK(mentions(bad.errors, "invalid JSON"));

  ConfigParseResult empty = parse_config_text(R"({"experiments": []})");
  CHECK_FALSE(empty.ok());
}

TEST_CASE("config round trip") {
  RunConfig cfg;
  cfg.seed = 99;
  cfg.out_dir = "results";
  cfg.groundstate_cache = "cache.csv";
  ExperimentSpec s;
  s.kind = ExperimentKind::partition;
  s.map = DispersionMap::two_step(2.0, 1.0, 0.5);
  s.n_min = -5;
  s.n_max = 5;
  s.seed = 4;
  cfg.experiments.push_back(s);
  ExperimentSpec b;
  b.kind = ExperimentKind::blowup;
  b.map = DispersionMap::two_step(1.0, 1.0, 0.5);
  b.grid = {GridSpec::Kind::radial, 1024, 8.0};
  b.datum = {"ground_state", 1.2, 1.0, 0.0, 0.0};
  b.lambda = 4.0;
  b.seed = 4;
  cfg.experiments.push_back(b);

  ConfigParseResult parsed = parse_config_text(serialize_config(cfg));
  REQUIRE(parsed.ok());
  CHECK(parsed.config->seed == 99);
  CHECK(parsed.config->out_dir == "results");
  CHECK(parsed.config->groundstate_cache == "cache.csv");
  REQUIRE(parsed.config->experiments.size() == 2);
  CHECK(serialize_config(*parsed.config) == serialize_config(cfg));
}

TEST_CASE("snapshot round trip") {
  Rng rng(55);
  TorusGrid1D tg(12.0, 256);
  std::vector<cdouble> vals(tg.points);
  for (auto& z : vals) z = {rng.gaussian(), rng.gaussian()};
  ComplexField field(tg, vals);
  std::string path = temp_path("dmnls_snapshot_test.bin");
  write_snapshot(field, 1.75, path);
  auto [back, t] = read_snapshot(path);
  CHECK(t == 1.75);
  REQUIRE(back.is_torus());
  CHECK(back.torus().half_length == 12.0);
  REQUIRE(back.size() == field.size());
  for (std::size_t j = 0; j < field.size(); ++j) {
    CHECK(back.values()[j] == field.values()[j]);  // bit-exact f64 pairs
  }

  RadialGrid3D rg(6.0, 128);
  std::vector<cdouble> rvals(rg.interior_points());
  for (auto& z : rvals) z = {rng.gaussian(), rng.gaussian()};
  ComplexField rfield(rg, rvals);
  write_snapshot(rfield, 0.0, path);
  auto [rback, rt] = read_snapshot(path);
  REQUIRE_FALSE(rback.is_torus());
  CHECK(rback.radial().points == 128);
  for (std::size_t j = 0; j < rfield.size(); ++j) {
    CHECK(rback.values()[j] == rfield.values()[j]);
  }
  fs::remove(path);

  CHECK_THROWS(read_snapshot("/nonexistent/snap.bin"));
}

TEST_CASE("field and diagnostics CSV headers") {
  TorusGrid1D tg(4.0, 16);
  ComplexField f = ComplexField::sample(tg, [](double x) -> cdouble {
    return {x, -x};
  });
  std::string path = temp_path("dmnls_field_test.csv");
  write_field_csv(f, path);
  std::string text = slurp(path);
  CHECK(text.rfind("r_or_x,re,im\n", 0) == 0);

  std::vector<DiagnosticsRecord> recs(2);
  recs[1].t = 0.5;
  recs[1].mass = 2.0;
  write_diagnostics_csv(recs, path);
  text = slurp(path);
  CHECK(text.rfind(
            "t,mass,E_plus,E_minus,grad_sq,quartic,variance,momentum,virial_rhs\n",
            0) == 0);
  fs::remove(path);
}

TEST_CASE("plot exports reproduce the accumulated dispersion exactly") {
  DispersionMap map = DispersionMap::two_step(2.0, 1.0, 0.5);
  std::string path = temp_path("dmnls_gamma_test.csv");
  export_big_gamma_csv(map, 3.0, path, 300);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,Gamma,avg_line");
  double t = 0.0, g = 0.0, line = 0.0;
  char comma = 0;
  std::string row;
  double max_drift = 0.0;
  double last_t = 0.0, last_g = 0.0;
  while (std::getline(in, row)) {
    std::istringstream ss(row);
    ss >> t >> comma >> g >> comma >> line;
    max_drift = std::max(max_drift, std::abs(g - line));
    last_t = t;
    last_g = g;
  }
  CHECK(last_t == 3.0);
  CHECK(last_g == 3.0 * map.average());  // periodicity pins integer times
  CHECK(max_drift <= 2.0 * map.sup_norm());

  // constant map: Gamma column equals the time column
  export_big_gamma_csv(DispersionMap::constant(1.0), 2.0, path, 100);
  std::ifstream in2(path);
  std::getline(in2, header);
  while (std::getline(in2, row)) {
    std::istringstream ss(row);
    ss >> t >> comma >> g >> comma >> line;
    CHECK(g == doctest::Approx(t).epsilon(1e-14));
  }
  fs::remove(path);
}

TEST_CASE("gamma period export") {
  DispersionMap map = DispersionMap::two_step(2.0, 1.0, 0.5);
  std::string path = temp_path("dmnls_gamma_period.csv");
  export_gamma_csv(map, path, 64);
  std::string text = slurp(path);
  CHECK(text.rfind("t,gamma\n", 0) == 0);
  fs::remove(path);
}

TEST_CASE("result report JSON carries the pinned fields") {
  ExperimentSpec s;
  s.kind = ExperimentKind::partition;
  s.map = DispersionMap::two_step(2.0, 1.0, 0.5);
  s.seed = 11;
  ResultReport report;
  report.spec = s;
  report.seed = 11;
  report.verdict = "pass";
  report.measurements.push_back({"k_max", 2.0, 39.0, true});
  report.runtime_seconds = 0.25;
  std::string text = report_to_json(report);
  CHECK(text.find("\"verdict\": \"pass\"") != std::string::npos);
  CHECK(text.find("\"name\": \"k_max\"") != std::string::npos);
  CHECK(text.find("\"tolerance\": 39.0") != std::string::npos);
  CHECK(text.find("\"seed\": 11") != std::string::npos);
  CHECK(text.find("\"runtime_seconds\"") != std::string::npos);
  CHECK(text.find("\"measurements\"") != std::string::npos);
  CHECK(text.find("\"spec\"") != std::string::npos);
}
