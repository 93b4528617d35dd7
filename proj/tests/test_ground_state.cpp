#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "dmnls/diagnostics.hpp"
#include "dmnls/ground_state.hpp"
#include "support/petviashvili.hpp"

using namespace dmnls;

namespace {
const GroundStateProfile& ground_state() {
  static GroundStateProfile q = solve_ground_state(1e-6, 20.0, 4001);
  return q;
}
}  // namespace

TEST_CASE("pohozaev structure of the converged profile") {
  const GroundStateProfile& q = ground_state();
  auto [res1, res2] = pohozaev_residuals(q);
  CHECK(std::abs(res1) <= 1e-6);
  CHECK(std::abs(res2) <= 1e-6);
  CHECK(q.grad_sq() / q.mass() == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(q.quartic() / q.mass() == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(q.far_field_deviation() < 1e-3);
  // profile positive and radially decreasing
  for (std::size_t i = 1; i < q.samples().size(); ++i) {
    CHECK(q.samples()[i] > 0.0);
    CHECK(q.samples()[i] <= q.samples()[i - 1] + 1e-12);
  }
}

TEST_CASE("dual-solver agreement pins the numeric values") {
  const GroundStateProfile& q = ground_state();
  auto p = dmnls_test::petviashvili_ground_state();
  REQUIRE(p.converged);
  CHECK(std::abs(q.peak() - p.peak) <= 1e-5 * p.peak);
  CHECK(std::abs(q.mass() - p.mass) <= 1e-5 * p.mass);
  // frozen regression values from the two-solver cross-check
  CHECK(q.peak() == doctest::Approx(4.33738768).epsilon(1e-6));
  CHECK(q.mass() == doctest::Approx(18.8972512).epsilon(1e-5));
}

TEST_CASE("deliberately perturbed profile fails the residual check") {
  const GroundStateProfile& q = ground_state();
  std::vector<double> scaled = q.samples();
  for (double& v : scaled) v *= 1.1;
  GroundStateProfile bad(1.0, q.radii(), std::move(scaled), 1.21 * q.mass(),
                         1.21 * q.grad_sq(), 1.4641 * q.quartic(), 0.0, 1.0,
                         0.0);
  auto [res1, res2] = pohozaev_residuals(bad);
  CHECK(std::abs(res1) > 1e-2);
  CHECK(std::abs(res2) > 1e-2);
}

TEST_CASE("rescaling to R_plus") {
  const GroundStateProfile& q = ground_state();

  GroundStateProfile same = rescale_to_rplus(q, 1.0);
  CHECK(same.mass() == doctest::Approx(q.mass()).epsilon(1e-12));
  CHECK(same.grad_sq() == doctest::Approx(q.grad_sq()).epsilon(1e-12));

  for (double gp : {0.5, 1.7, 3.0}) {
    GroundStateProfile r = rescale_to_rplus(q, gp);
    CHECK(r.mass() ==
          doctest::Approx(std::pow(gp, 1.5) * q.mass()).epsilon(1e-12));
    CHECK(r.grad_sq() ==
          doctest::Approx(std::sqrt(gp) * q.grad_sq()).epsilon(1e-12));
    CHECK(r.quartic() ==
          doctest::Approx(std::pow(gp, 1.5) * q.quartic()).epsilon(1e-12));
    // Pohozaev identities survive the rescaling exactly
    auto [res1, res2] = pohozaev_residuals(r);
    CHECK(std::abs(res1) <= 1e-6);
    CHECK(std::abs(res2) <= 1e-6);
    CHECK(gp * r.grad_sq() == doctest::Approx(3.0 * r.mass()).epsilon(1e-6));
    // E+(R+) = (gamma_+/6) ||grad R+||^2 = M(R+)/2
    FieldNorms n{r.mass(), r.grad_sq(), r.quartic(), 0.0, 0.0};
    double e_plus = energies(n, gp, 1.0).first;
    CHECK(e_plus == doctest::Approx(gp / 6.0 * r.grad_sq()).epsilon(1e-6));
    CHECK(e_plus == doctest::Approx(0.5 * r.mass()).epsilon(1e-6));
    // profile samples really are Q(x / sqrt(gp))
    CHECK(r.value(1.0) == doctest::Approx(q.value(1.0 / std::sqrt(gp))).epsilon(1e-9));
  }
  CHECK_THROWS(rescale_to_rplus(rescale_to_rplus(q, 2.0), 2.0));
}

TEST_CASE("sharp Gagliardo-Nirenberg constant") {
  const GroundStateProfile& q = ground_state();
  double c0 = gn_constant(q);
  CHECK(c0 == doctest::Approx(4.0 / (3.0 * std::sqrt(3.0) * q.mass()))
                  .epsilon(1e-6));
  // scale independence of C0 * M * gamma^{-3/2}
  double base = c0 * q.mass();
  for (double gp : {0.5, 2.0, 4.0}) {
    GroundStateProfile r = rescale_to_rplus(q, gp);
    CHECK(gn_constant(r) * r.mass() * std::pow(gp, -1.5) ==
          doctest::Approx(base).epsilon(1e-6));
  }
}

TEST_CASE("solver input validation") {
  CHECK_THROWS(solve_ground_state(0.0));
  CHECK_THROWS(solve_ground_state(1e-3));      // tol above the cap
  CHECK_THROWS(solve_ground_state(1e-6, 5.0)); // r_max too small
  CHECK_THROWS(solve_ground_state(1e-6, 20.0, 16));
}

TEST_CASE("profile evaluation: spline inside, matched tail outside") {
  const GroundStateProfile& q = ground_state();
  CHECK(q.value(0.0) == doctest::Approx(q.peak()));
  // spline reproduces the stored samples
  for (std::size_t i = 100; i < q.radii().size(); i += 700) {
    CHECK(q.value(q.radii()[i]) == doctest::Approx(q.samples()[i]).epsilon(1e-10));
  }
  // tail decays like e^{-r}/r
  double v1 = q.value(q.r_max() + 1.0);
  double v2 = q.value(q.r_max() + 2.0);
  double expected_ratio = std::exp(-1.0) * (q.r_max() + 1.0) / (q.r_max() + 2.0);
  CHECK(v2 / v1 == doctest::Approx(expected_ratio).epsilon(1e-9));
}

TEST_CASE("sampling onto a radial grid reproduces the norms") {
  const GroundStateProfile& q = ground_state();
  RadialGrid3D grid(16.0, 2048);
  ComplexField f = q.sample(grid);
  FieldNorms n = norms(f);
  CHECK(n.mass == doctest::Approx(q.mass()).epsilon(1e-6));
  CHECK(n.grad_sq == doctest::Approx(q.grad_sq()).epsilon(1e-4));
  CHECK(n.l4_quartic == doctest::Approx(q.quartic()).epsilon(1e-6));

  // amplitude and lambda rescaling: M -> a^2 M / lambda, G -> a^2 lambda G
  ComplexField g = q.sample(grid, 1.2, 2.0);
  FieldNorms ng = norms(g);
  CHECK(ng.mass == doctest::Approx(1.44 * q.mass() / 2.0).epsilon(1e-5));
  CHECK(ng.grad_sq == doctest::Approx(1.44 * 2.0 * q.grad_sq()).epsilon(1e-4));
}

TEST_CASE("profile cache round trip") {
  const GroundStateProfile& q = ground_state();
  std::string path = (std::filesystem::temp_directory_path() /
                      "dmnls_test_groundstate.csv")
                         .string();
  save_profile(q, path);
  GroundStateProfile loaded = load_profile(path);
  CHECK(loaded.gamma_scale() == doctest::Approx(1.0));
  CHECK(loaded.mass() == doctest::Approx(q.mass()).epsilon(1e-12));
  CHECK(loaded.grad_sq() == doctest::Approx(q.grad_sq()).epsilon(1e-12));
  CHECK(loaded.quartic() == doctest::Approx(q.quartic()).epsilon(1e-12));
  CHECK(loaded.peak() == doctest::Approx(q.peak()).epsilon(1e-12));
  CHECK(loaded.value(3.3) == doctest::Approx(q.value(3.3)).epsilon(1e-9));
  CHECK(loaded.value(25.0) == doctest::Approx(q.value(25.0)).epsilon(1e-6));

  GroundStateProfile cached = cached_ground_state(path, 1e-6, 20.0, 4001);
  CHECK(cached.mass() == doctest::Approx(q.mass()).epsilon(1e-12));
  std::filesystem::remove(path);

  CHECK_THROWS(load_profile("/nonexistent/profile.csv"));
}
