#include "dmnls/ground_state.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dmnls {

namespace odeint = boost::numeric::odeint;

struct GroundStateProfile::Spline {
  boost::math::interpolators::cardinal_cubic_b_spline<double> interp;
};

GroundStateProfile::GroundStateProfile(double gamma_scale,
                                       std::vector<double> radii,
                                       std::vector<double> samples,
                                       double mass, double grad_sq,
                                       double quartic, double tail_coef,
                                       double tail_rate,
                                       double far_field_deviation)
    : gamma_scale_(gamma_scale),
      radii_(std::move(radii)),
      samples_(std::move(samples)),
      mass_(mass),
      grad_sq_(grad_sq),
      quartic_(quartic),
      tail_coef_(tail_coef),
      tail_rate_(tail_rate),
      far_field_deviation_(far_field_deviation) {
  if (radii_.size() != samples_.size() || radii_.size() < 4) {
    throw std::invalid_argument("profile needs matching radius/sample arrays");
  }
  double dr = radii_[1] - radii_[0];
  // left slope 0 encodes Q'(0) = 0
  spline_ = std::make_shared<const Spline>(Spline{
      boost::math::interpolators::cardinal_cubic_b_spline<double>(
          samples_.data(), samples_.size(), radii_.front(), dr, 0.0)});
}

double GroundStateProfile::value(double r) const {
  r = std::abs(r);
  if (r <= radii_.back()) return spline_->interp(r);
  return tail_coef_ * std::exp(-tail_rate_ * r) / r;
}

ComplexField GroundStateProfile::sample(const RadialGrid3D& grid,
                                        double amplitude,
                                        double lambda) const {
  return ComplexField::sample(grid, [&](double r) -> cdouble {
    return amplitude * lambda * value(lambda * r);
  });
}

namespace {

// Q'' = Q - Q^3 - (2/r) Q'
struct ShootRhs {
  void operator()(const std::array<double, 2>& y, std::array<double, 2>& dydr,
                  double r) const {
    dydr[0] = y[1];
    dydr[1] = y[0] - y[0] * y[0] * y[0] - 2.0 / r * y[1];
  }
};

// Adds running quadratures of mass, gradient, and quartic integrals.
struct ShootQuadRhs {
  void operator()(const std::array<double, 5>& y, std::array<double, 5>& dydr,
                  double r) const {
    const double q = y[0], dq = y[1];
    dydr[0] = dq;
    dydr[1] = q - q * q * q - 2.0 / r * dq;
    const double w = 4.0 * M_PI * r * r;
    dydr[2] = w * q * q;
    dydr[3] = w * dq * dq;
    dydr[4] = w * q * q * q * q;
  }
};

template <std::size_t N>
std::array<double, N> series_start(double b, double r0) {
  // Q = b + a2 r^2 + a4 r^4 near the origin
  const double a2 = (b - b * b * b) / 6.0;
  const double a4 = a2 * (1.0 - 3.0 * b * b) / 20.0;
  std::array<double, N> y{};
  y[0] = b + a2 * r0 * r0 + a4 * r0 * r0 * r0 * r0;
  y[1] = 2.0 * a2 * r0 + 4.0 * a4 * r0 * r0 * r0;
  return y;
}

enum class ShotClass { crossed_zero, captured, unresolved };

// Trajectories either cross zero (peak too high) or fall into the
// potential well around Q = 1, detected by the damped energy
// E = q'^2/2 - q^2/2 + q^4/4 turning negative (peak too low).
ShotClass classify_shot(double b) {
  const double r0 = 1e-3;
  auto y = series_start<2>(b, r0);
  double r = r0;
  double dr = 1e-3;
  auto stepper =
      odeint::make_controlled(1e-12, 1e-12,
                              odeint::runge_kutta_dopri5<std::array<double, 2>>());
  while (r < 40.0) {
    if (stepper.try_step(ShootRhs{}, y, r, dr) == odeint::success) {
      if (y[0] < 0.0) return ShotClass::crossed_zero;
      double energy = 0.5 * y[1] * y[1] - 0.5 * y[0] * y[0] +
                      0.25 * y[0] * y[0] * y[0] * y[0];
      if (energy < 0.0) return ShotClass::captured;
    }
  }
  return ShotClass::unresolved;
}

struct TailIntegrals {
  double mass = 0.0, grad = 0.0, quartic = 0.0;
};

// Closed-form-in-shape tail contributions for Q ~ C e^{-r} / r beyond rm,
// integrated by fine Simpson until exhaustion.
TailIntegrals tail_integrals(double coef, double rm) {
  TailIntegrals out;
  const int steps = 4000;
  const double span = 40.0;
  const double h = span / steps;
  auto f_mass = [&](double r) {
    double q = coef * std::exp(-r) / r;
    return 4.0 * M_PI * r * r * q * q;
  };
  auto f_grad = [&](double r) {
    double dq = -coef * std::exp(-r) * (1.0 / r + 1.0 / (r * r));
    return 4.0 * M_PI * r * r * dq * dq;
  };
  auto f_quartic = [&](double r) {
    double q = coef * std::exp(-r) / r;
    return 4.0 * M_PI * r * r * q * q * q * q;
  };
  for (int i = 0; i < steps; i += 2) {
    double r0 = rm + i * h, r1 = r0 + h, r2 = r0 + 2 * h;
    out.mass += h / 3.0 * (f_mass(r0) + 4.0 * f_mass(r1) + f_mass(r2));
    out.grad += h / 3.0 * (f_grad(r0) + 4.0 * f_grad(r1) + f_grad(r2));
    out.quartic +=
        h / 3.0 * (f_quartic(r0) + 4.0 * f_quartic(r1) + f_quartic(r2));
  }
  return out;
}

}  // namespace

GroundStateProfile solve_ground_state(double tol, double r_max,
                                      std::size_t nodes) {
  if (!(tol > 0.0) || tol > 1e-4) {
    throw std::invalid_argument("tol must lie in (0, 1e-4]");
  }
  if (!(r_max >= 10.0)) {
    throw std::invalid_argument("r_max must be at least 10");
  }
  if (nodes < 128) {
    throw std::invalid_argument("profile needs at least 128 nodes");
  }

  double lo = 0.1, hi = 100.0;
  if (classify_shot(lo) != ShotClass::captured ||
      classify_shot(hi) != ShotClass::crossed_zero) {
    throw std::runtime_error("bisection bracket not found in [0.1, 100]");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    if (classify_shot(mid) == ShotClass::crossed_zero) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double peak = 0.5 * (lo + hi);

  // Final pass: dense-output integration with norm quadratures, sampled on
  // the uniform profile grid out to the tail-matching radius.
  const double r0 = 1e-3;
  const double dr_grid = r_max / static_cast<double>(nodes - 1);
  std::vector<double> radii(nodes), samples(nodes, 0.0);
  for (std::size_t i = 0; i < nodes; ++i) radii[i] = i * dr_grid;

  const double match_level = 1e-5 * peak;
  auto dense = odeint::make_dense_output(
      1e-13, 1e-13, odeint::runge_kutta_dopri5<std::array<double, 5>>());
  auto y0 = series_start<5>(peak, r0);
  dense.initialize(y0, r0, 1e-4);

  std::size_t next_node = 1;  // node 0 handled by the series below
  samples[0] = peak;
  double r_match = 0.0;
  std::array<double, 5> y_match{};
  while (r_match == 0.0) {
    dense.do_step(ShootQuadRhs{});
    if (!(dense.current_state()[0] > 0.0)) {
      throw std::runtime_error("shooting produced a non-nodeless profile");
    }
    while (next_node < nodes && radii[next_node] <= dense.current_time()) {
      std::array<double, 5> yi{};
      dense.calc_state(radii[next_node], yi);
      samples[next_node] = yi[0];
      ++next_node;
    }
    if (dense.current_state()[0] < match_level ||
        dense.current_time() > r_max - 1e-9) {
      r_match = dense.current_time();
      y_match = dense.current_state();
    }
  }

  // Fill remaining nodes from the matched asymptote C e^{-r} / r.
  const double tail_coef = y_match[0] * r_match * std::exp(r_match);
  for (std::size_t i = next_node; i < nodes; ++i) {
    samples[i] = tail_coef * std::exp(-radii[i]) / radii[i];
  }

  // Far-field certificate: the fitted coefficient must be flat near r_match.
  double dev = 0.0;
  {
    auto probe = odeint::make_dense_output(
        1e-13, 1e-13, odeint::runge_kutta_dopri5<std::array<double, 2>>());
    auto yp = series_start<2>(peak, r0);
    probe.initialize(yp, r0, 1e-4);
    std::vector<double> coefs;
    double r_lo = std::max(1.0, r_match - 2.0);
    while (probe.current_time() < r_match) {
      probe.do_step(ShootRhs{});
      double r = probe.current_time();
      if (r >= r_lo && r <= r_match) {
        coefs.push_back(probe.current_state()[0] * r * std::exp(r));
      }
    }
    if (coefs.size() >= 2) {
      double cmin = coefs[0], cmax = coefs[0];
      for (double c : coefs) {
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
      }
      dev = (cmax - cmin) / std::abs(tail_coef);
    }
  }
  if (dev > tol * 1e3 && dev > 1e-3) {
    throw std::runtime_error("far field does not match C e^{-r}/r decay");
  }

  TailIntegrals tail = tail_integrals(tail_coef, r_match);
  const double mass = y_match[2] + tail.mass;
  const double grad = y_match[3] + tail.grad;
  const double quartic = y_match[4] + tail.quartic;

  return GroundStateProfile(1.0, std::move(radii), std::move(samples), mass,
                            grad, quartic, tail_coef, 1.0, dev);
}

GroundStateProfile rescale_to_rplus(const GroundStateProfile& q,
                                    double gamma_plus) {
  if (!(gamma_plus > 0.0)) {
    throw std::invalid_argument("gamma_plus must be positive");
  }
  if (q.gamma_scale() != 1.0) {
    throw std::invalid_argument("rescale_to_rplus expects the gamma = 1 profile");
  }
  const double s = std::sqrt(gamma_plus);
  std::vector<double> radii = q.radii();
  std::vector<double> samples(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    samples[i] = (i == 0) ? q.peak() : q.value(radii[i] / s);
  }
  const double g32 = gamma_plus * s;  // gamma_plus^{3/2}
  const double r_last = radii.back();
  const double tail_coef = samples.back() * r_last * std::exp(r_last / s);
  return GroundStateProfile(gamma_plus, std::move(radii), std::move(samples),
                            g32 * q.mass(), s * q.grad_sq(), g32 * q.quartic(),
                            tail_coef, /*tail_rate=*/1.0 / s,
                            q.far_field_deviation());
}

double gn_constant(const GroundStateProfile& p) {
  return p.quartic() / (std::sqrt(p.mass()) * std::pow(p.grad_sq(), 1.5));
}

std::pair<double, double> pohozaev_residuals(const GroundStateProfile& p) {
  const double m = p.mass(), g = p.grad_sq(), q = p.quartic();
  const double gamma = p.gamma_scale();
  double res1 = (-m - gamma * g + q) / m;
  double res2 = (1.5 * m + 0.5 * gamma * g - 0.75 * q) / m;
  return {res1, res2};
}

void save_profile(const GroundStateProfile& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open profile cache for writing: " + path);
  out.precision(17);
  out << "# dmnls-groundstate v1, gamma_scale=" << p.gamma_scale()
      << ", M=" << p.mass() << ", G=" << p.grad_sq() << ", P=" << p.quartic()
      << "\n";
  for (std::size_t i = 0; i < p.radii().size(); ++i) {
    out << p.radii()[i] << ", " << p.samples()[i] << "\n";
  }
}

GroundStateProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile cache: " + path);
  std::string header;
  std::getline(in, header);
  double gamma_scale = 0.0, m = 0.0, g = 0.0, q = 0.0;
  if (std::sscanf(header.c_str(),
                  "# dmnls-groundstate v1, gamma_scale=%lf, M=%lf, G=%lf, P=%lf",
                  &gamma_scale, &m, &g, &q) != 4) {
    throw std::runtime_error("unrecognized profile cache header");
  }
  std::vector<double> radii, samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double r = 0.0, v = 0.0;
    char comma = 0;
    if (!(row >> r >> comma >> v)) {
      throw std::runtime_error("malformed profile cache row: " + line);
    }
    radii.push_back(r);
    samples.push_back(v);
  }
  if (radii.size() < 4) {
    throw std::runtime_error("profile cache holds too few rows");
  }
  const double rate = 1.0 / std::sqrt(gamma_scale);
  const double r_last = radii.back();
  const double coef = samples.back() * r_last * std::exp(rate * r_last);
  return GroundStateProfile(gamma_scale, std::move(radii), std::move(samples),
                            m, g, q, coef, rate, 0.0);
}

GroundStateProfile cached_ground_state(const std::string& cache_path,
                                       double tol, double r_max,
                                       std::size_t nodes) {
  if (!cache_path.empty()) {
    std::ifstream probe(cache_path);
    if (probe.good()) {
      GroundStateProfile p = load_profile(cache_path);
      if (p.gamma_scale() == 1.0 && std::abs(p.r_max() - r_max) < 1e-9 &&
          p.radii().size() == nodes) {
        return p;
      }
    }
  }
  GroundStateProfile p = solve_ground_state(tol, r_max, nodes);
  if (!cache_path.empty()) save_profile(p, cache_path);
  return p;
}

}  // namespace dmnls
