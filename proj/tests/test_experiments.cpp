#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dmnls/experiments.hpp"
#include "dmnls/ground_state.hpp"

using namespace dmnls;

namespace {

const GroundStateProfile& ground_state() {
  static GroundStateProfile q = solve_ground_state();
  return q;
}

ExperimentSpec partition_spec() {
  ExperimentSpec s;
  s.kind = ExperimentKind::partition;
  s.map = DispersionMap::two_step(2.0, 1.0, 0.5);
  s.n_min = -10;
  s.n_max = 10;
  s.seed = 12;
  return s;
}

}  // namespace

TEST_CASE("partition sweep on the reference map") {
  ResultReport report = run_partition(partition_spec());
  CHECK(report.verdict == "pass");
  REQUIRE(report.covers.size() == 21);
  const Measurement* k_gamma = report.find("k_gamma");
  REQUIRE(k_gamma);
  CHECK(k_gamma->value == doctest::Approx(39.0));
  for (const CoverReport& c : report.covers) {
    CHECK(c.count <= 39);
    if (c.n == 0) CHECK(c.count == 2);
  }
}

TEST_CASE("partition sweep on the constant map") {
  ExperimentSpec s = partition_spec();
  s.map = DispersionMap::constant(1.0);
  ResultReport report = run_partition(s);
  CHECK(report.verdict == "pass");
  for (const CoverReport& c : report.covers) CHECK(c.count == 1);
}

TEST_CASE("partition sweep over random admissible maps") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    ExperimentSpec s = partition_spec();
    // small random two-to-four segment maps
    int count = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
    std::vector<Segment> segs(count);
    double total = 0.0;
    for (auto& seg : segs) {
      seg.duration = rng.uniform(0.1, 1.0);
      total += seg.duration;
    }
    double acc = 0.0;
    for (int i = 0; i + 1 < count; ++i) {
      segs[i].duration /= total;
      acc += segs[i].duration;
    }
    segs[count - 1].duration = 1.0 - acc;
    double avg = 0.0;
    do {
      avg = 0.0;
      for (auto& seg : segs) {
        seg.value = rng.uniform(-4.0, 4.0);
        if (std::abs(seg.value) < 0.2) seg.value = 0.5;
        avg += seg.duration * seg.value;
      }
    } while (std::abs(avg) < 0.15);
    s.map = DispersionMap(segs);
    s.n_min = -6;
    s.n_max = 6;
    ResultReport report = run_partition(s);
    CHECK(report.verdict == "pass");
  }
}

TEST_CASE("partition rejects non-admissible maps") {
  ExperimentSpec s = partition_spec();
  s.map = DispersionMap({{0.5, 1.0}, {0.5, -1.0}});
  CHECK_THROWS_WITH_AS(run_partition(s), "not admissible: zero average",
                       std::invalid_argument);
}

TEST_CASE("strichartz audit: the (inf, 2) pair is unitary") {
  ExperimentSpec s;
  s.kind = ExperimentKind::strichartz;
  s.map = DispersionMap::two_step(2.0, 1.0, 0.5);
  s.grid = {GridSpec::Kind::torus, 2048, 64.0};
  s.q = std::numeric_limits<double>::infinity();
  s.r = 2.0;
  s.t_window = 2.0;
  s.ensemble = 8;
  s.c_str = 1.0 + 1e-9;
  s.seed = 5;
  ResultReport report = run_strichartz(s);
  CHECK(report.verdict == "pass");
  const Measurement* ratio = report.find("max_ratio");
  REQUIRE(ratio);
  CHECK(ratio->value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("strichartz audit rejects bad inputs") {
  ExperimentSpec s;
  s.kind = ExperimentKind::strichartz;
  s.map = DispersionMap::two_step(2.0, 1.0, 0.5);
  s.grid = {GridSpec::Kind::torus, 2048, 64.0};
  s.t_window = 2.0;
  s.q = 8.0;
  s.r = 3.0;  // violates 2/q + 1/r = 1/2
  CHECK_THROWS(run_strichartz(s));

  s.r = 4.0;
  s.map = DispersionMap({{0.5, 1.0}, {0.5, -1.0}});
  CHECK_THROWS_WITH_AS(run_strichartz(s), "not admissible: zero average",
                       std::invalid_argument);

  s.map = DispersionMap::two_step(2.0, 1.0, 0.5);
  s.grid.extent = 16.0;  // too small for the window
  s.t_window = 12.0;
  CHECK_THROWS(run_strichartz(s));
}

TEST_CASE("strichartz audit at (8,4) on a short window") {
  ExperimentSpec s;
  s.kind = ExperimentKind::strichartz;
  s.map = DispersionMap::two_step(2.0, 1.0, 0.5);
  s.grid = {GridSpec::Kind::torus, 4096, 96.0};
  s.q = 8.0;
  s.r = 4.0;
  s.t_window = 4.0;
  s.ensemble = 10;
  s.seed = 9;
  ResultReport report = run_strichartz(s);
  CHECK(report.verdict == "pass");
  const Measurement* cal = report.find("c_str_calibrated");
  REQUIRE(cal);
  CHECK(cal->value > 0.0);
}

TEST_CASE("experiment reports are deterministic in the seed") {
  ExperimentSpec s;
  s.kind = ExperimentKind::strichartz;
  s.map = DispersionMap::two_step(2.0, 1.0, 0.5);
  s.grid = {GridSpec::Kind::torus, 2048, 64.0};
  s.q = std::numeric_limits<double>::infinity();
  s.r = 2.0;
  s.t_window = 1.0;
  s.ensemble = 4;
  s.c_str = 1.1;
  s.seed = 321;
  ResultReport a = run_strichartz(s);
  ResultReport b = run_strichartz(s);
  REQUIRE(a.measurements.size() == b.measurements.size());
  for (std::size_t i = 0; i < a.measurements.size(); ++i) {
    CHECK(a.measurements[i].value == b.measurements[i].value);
  }
  s.seed = 322;
  ResultReport c = run_strichartz(s);
  const Measurement* ra = a.find("max_ratio");
  const Measurement* rc = c.find("max_ratio");
  // different data, but the (inf,2) ratio is unitarity-pinned either way
  CHECK(ra->value == doctest::Approx(rc->value).epsilon(1e-12));
}

TEST_CASE("inhomogeneous audit is quadrature stable") {
  ExperimentSpec s;
  s.kind = ExperimentKind::inhomogeneous;
  s.map = DispersionMap::two_step(2.0, 1.0, 0.5);
  s.grid = {GridSpec::Kind::torus, 2048, 64.0};
  s.q = 8.0;
  s.r = 4.0;
  s.t_window = 4.0;
  s.ensemble = 4;
  s.seed = 17;
  ResultReport report = run_inhomogeneous_audit(s);
  CHECK(report.verdict == "pass");
  const Measurement* ratio = report.find("max_ratio");
  REQUIRE(ratio);
  CHECK(ratio->value > 0.0);
  CHECK(std::isfinite(ratio->value));
  const Measurement* drift = report.find("quadrature_drift");
  REQUIRE(drift);
  CHECK(drift->value <= 0.02);

  s.q = 2.0;
  s.r = std::numeric_limits<double>::infinity();  // d=1 pair (2, inf)
  CHECK_THROWS(run_inhomogeneous_audit(s));
}

TEST_CASE("scattering run on a small Gaussian") {
  ExperimentSpec s;
  s.kind = ExperimentKind::scattering;
  s.map = DispersionMap::two_step(2.0, 1.0, 0.5);
  s.grid = {GridSpec::Kind::torus, 4096, 128.0};
  s.datum = {"gaussian", 0.01, 2.0, 0.0, 0.0};
  s.eta = 0.05;
  s.t_final = 32.0;
  s.checkpoints = 6;
  s.dt_max = 0.05;
  s.seed = 3;
  ResultReport report = run_scattering(s);
  CHECK(report.verdict == "pass");
  const Measurement* mono = report.find("cauchy_monotone");
  REQUIRE(mono);
  CHECK(mono->pass);
  const Measurement* last = report.find("cauchy_last");
  REQUIRE(last);
  CHECK(last->pass);
  REQUIRE(report.final_state.has_value());
  CHECK(report.final_state->all_finite());
  CHECK(report.diagnostics.size() == 7);

  // zero datum: all Cauchy differences vanish
  ExperimentSpec z = s;
  z.datum.amplitude = 0.0;
  ResultReport zero = run_scattering(z);
  const Measurement* zlast = zero.find("cauchy_last");
  REQUIRE(zlast);
  CHECK(zlast->value == 0.0);
}

TEST_CASE("soliton regression at desk scale") {
  ExperimentSpec s;
  s.kind = ExperimentKind::soliton;
  s.map = DispersionMap::two_step(1.0, 1.0, 0.5);
  s.grid = {GridSpec::Kind::radial, 2048, 16.0};
  s.datum = {"ground_state", 1.0, 1.0, 0.0, 0.0};
  s.t_final = 0.2;
  s.dt_max = 4e-3;
  s.seed = 1;
  ResultReport report = run_soliton(s, ground_state());
  CHECK(report.verdict == "pass");
  const Measurement* drift = report.find("mass_drift");
  REQUIRE(drift);
  CHECK(drift->value <= 1e-10);
  const Measurement* ratio = report.find("step_halving_ratio");
  REQUIRE(ratio);
  CHECK(ratio->value > 3.2);
  CHECK(ratio->value < 4.8);
}

TEST_CASE("blowup run with a fixed rescaling") {
  ExperimentSpec s;
  s.kind = ExperimentKind::blowup;
  s.map = DispersionMap::two_step(1.0, 1.0, 0.5);
  s.grid = {GridSpec::Kind::radial, 2048, 6.0};
  s.datum = {"ground_state", 1.2, 1.0, 0.0, 0.0};
  s.lambda = 4.0;
  s.h1_growth_factor = 30.0;
  s.dt_max = 1e-4;
  s.seed = 2;
  ResultReport report = run_blowup(s, ground_state());
  CHECK(report.verdict == "blowup_detected");
  const Measurement* t_star = report.find("t_star");
  REQUIRE(t_star);
  CHECK(t_star->value > 0.0);
  CHECK(t_star->value < 0.5);
  const Measurement* margin = report.find("delta_margin");
  REQUIRE(margin);
  CHECK(margin->value > 0.5);  // 1.2 R_+ sits deep inside the blowup region

  // under-resolved lambda trips the guard instead of reporting blowup
  ExperimentSpec coarse = s;
  coarse.grid.points = 256;
  coarse.lambda = 64.0;
  ResultReport inconclusive = run_blowup(coarse, ground_state());
  CHECK(inconclusive.verdict == "inconclusive");
}

TEST_CASE("blowup rejects data violating the mass-energy conditions") {
  ExperimentSpec s;
  s.kind = ExperimentKind::blowup;
  s.map = DispersionMap::two_step(1.0, 1.0, 0.5);
  s.grid = {GridSpec::Kind::radial, 1024, 6.0};
  s.datum = {"ground_state", 0.5, 1.0, 0.0, 0.0};  // small data
  s.lambda = 2.0;
  CHECK_THROWS_AS(run_blowup(s, ground_state()), std::domain_error);
}

TEST_CASE("run_experiment dispatches and guards the profile") {
  ExperimentSpec s = partition_spec();
  ResultReport report = run_experiment(s);
  CHECK(report.verdict == "pass");

  ExperimentSpec b;
  b.kind = ExperimentKind::blowup;
  CHECK_THROWS(run_experiment(b, nullptr));
}
