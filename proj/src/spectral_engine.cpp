#include "dmnls/spectral_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dmnls/transforms.hpp"

namespace dmnls {

namespace {

void propagate_torus(const TorusGrid1D& g, std::vector<cdouble>& vals,
                     double dg) {
  const std::size_t m = g.points;
  std::vector<cdouble> hat(m);
  transforms::dft_forward(vals, hat);
  for (std::size_t k = 0; k < m; ++k) {
    double xi = g.wavenumber(k);
    hat[k] *= std::polar(1.0, -dg * xi * xi);
  }
  transforms::dft_backward(hat, vals);
  const double inv = 1.0 / static_cast<double>(m);
  for (cdouble& z : vals) z *= inv;
}

void propagate_radial(const RadialGrid3D& g, std::vector<cdouble>& vals,
                      double dg) {
  const std::size_t n = g.interior_points();
  std::vector<cdouble> hat(n);
  transforms::dst1(vals, hat);
  for (std::size_t m = 0; m < n; ++m) {
    double k = g.wavenumber(m);
    hat[m] *= std::polar(1.0, -dg * k * k);
  }
  transforms::dst1(hat, vals);
  const double inv = 1.0 / (2.0 * static_cast<double>(g.points));
  for (cdouble& z : vals) z *= inv;
}

}  // namespace

ComplexField linear_propagate(const ComplexField& phi, double delta_gamma) {
  ComplexField out = phi;
  if (out.is_torus()) {
    propagate_torus(out.torus(), out.values(), delta_gamma);
  } else {
    propagate_radial(out.radial(), out.values(), delta_gamma);
  }
  return out;
}

ComplexField nonlinear_phase(const ComplexField& u, double h, int p) {
  if (p <= 0 || p % 2 != 0) {
    throw std::invalid_argument("nonlinearity power must be a positive even integer");
  }
  ComplexField out = u;
  auto& vals = out.values();
  if (out.is_torus()) {
    for (cdouble& z : vals) {
      double a2 = std::norm(z);
      z *= std::polar(1.0, h * std::pow(a2, p / 2.0));
    }
  } else {
    const RadialGrid3D& g = out.radial();
    for (std::size_t j = 0; j < vals.size(); ++j) {
      double r = g.node(j);
      double a2 = std::norm(vals[j]) / (r * r);  // |u|^2 = |v|^2 / r^2
      vals[j] *= std::polar(1.0, h * std::pow(a2, p / 2.0));
    }
  }
  return out;
}

ComplexField strang_step(const ComplexField& u, double t, double h,
                         const DispersionMap& map, const SplitStepConfig& cfg) {
  if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
  const double eps = 1e-12 * std::max(1.0, std::abs(t) + h);
  if (map.next_breakpoint_after(t) < t + h - eps) {
    throw std::domain_error("step crosses dispersion discontinuity");
  }
  double dg = map.accumulated(t + h, t);
  if (!cfg.nonlinearity_enabled) return linear_propagate(u, dg);
  ComplexField w = nonlinear_phase(u, 0.5 * h, cfg.nonlinearity_power);
  w = linear_propagate(w, dg);
  return nonlinear_phase(w, 0.5 * h, cfg.nonlinearity_power);
}

EvolveOutcome evolve(ComplexField& u, double t0, double t1,
                     const DispersionMap& map, const SplitStepConfig& cfg,
                     const SnapshotObserver& observer) {
  if (!(t1 > t0)) throw std::invalid_argument("evolve needs t1 > t0");
  if (!(cfg.dt_max > 0.0)) throw std::invalid_argument("dt_max must be positive");

  EvolveOutcome out;
  const FieldNorms initial = norms(u);
  const double sup_threshold = cfg.blowup_sup_factor * std::max(initial.sup, 1e-300);
  const double h1_threshold = cfg.blowup_h1_factor * std::max(initial.h1, 1e-300);

  auto cheap_sup = [](const ComplexField& f) {
    double worst = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      worst = std::max(worst, f.abs_u(j));
    }
    return worst;
  };

  if (observer) observer(t0, u);

  double t = t0;
  std::size_t steps_since_snapshot = 0;
  std::size_t steps_since_h1 = 0;
  while (t < t1 - 1e-12 * std::max(1.0, std::abs(t1))) {
    double seg_end = std::min(t1, map.next_breakpoint_after(t));
    double span = seg_end - t;
    auto n_steps = static_cast<std::size_t>(
        std::ceil(span / cfg.dt_max - 1e-12));
    n_steps = std::max<std::size_t>(n_steps, 1);
    double h = span / static_cast<double>(n_steps);
    for (std::size_t k = 0; k < n_steps; ++k) {
      double tk = t + static_cast<double>(k) * h;
      u = strang_step(u, tk, h, map, cfg);
      ++out.steps;
      ++steps_since_snapshot;
      ++steps_since_h1;

      bool tripped = !u.all_finite() || cheap_sup(u) > sup_threshold;
      if (!tripped && steps_since_h1 >= cfg.h1_check_stride) {
        steps_since_h1 = 0;
        tripped = norms(u).h1 > h1_threshold;
      }
      if (tripped) {
        out.blowup_detected = true;
        out.t_star = tk + 0.5 * h;
        out.t_end = tk + h;
        return out;
      }
      if (observer && steps_since_snapshot >= cfg.snapshot_stride) {
        observer(tk + h, u);
        steps_since_snapshot = 0;
      }
    }
    t = seg_end;
  }
  if (observer && steps_since_snapshot != 0) observer(t1, u);
  out.t_end = t1;
  return out;
}

FieldNorms norms(const ComplexField& u) {
  FieldNorms n;
  if (u.is_torus()) {
    const TorusGrid1D& g = u.torus();
    const auto& vals = u.values();
    const double dx = g.dx();
    for (const cdouble& z : vals) {
      double a2 = std::norm(z);
      n.mass += a2;
      n.l4_quartic += a2 * a2;
      n.sup = std::max(n.sup, std::abs(z));
    }
    n.mass *= dx;
    n.l4_quartic *= dx;

    std::vector<cdouble> hat(vals.size());
    transforms::dft_forward(vals, hat);
    const double scale = 2.0 * g.half_length /
                         (static_cast<double>(g.points) * static_cast<double>(g.points));
    for (std::size_t k = 0; k < hat.size(); ++k) {
      double xi = g.wavenumber(k);
      n.grad_sq += xi * xi * std::norm(hat[k]);
    }
    n.grad_sq *= scale;
  } else {
    const RadialGrid3D& g = u.radial();
    const auto& vals = u.values();
    const double dr = g.dr();
    for (std::size_t j = 0; j < vals.size(); ++j) {
      double r = g.node(j);
      double v2 = std::norm(vals[j]);
      n.mass += v2;
      n.l4_quartic += v2 * v2 / (r * r);
      n.sup = std::max(n.sup, std::abs(vals[j]) / r);
    }
    n.mass *= 4.0 * M_PI * dr;
    n.l4_quartic *= 4.0 * M_PI * dr;

    // integral |grad u|^2 d^3x = 4 pi integral |v'|^2 dr for Dirichlet v
    std::vector<cdouble> hat(vals.size());
    transforms::dst1(vals, hat);
    const double coeff_scale = 1.0 / static_cast<double>(g.points);
    double sum = 0.0;
    for (std::size_t m = 0; m < hat.size(); ++m) {
      double k = g.wavenumber(m);
      sum += k * k * std::norm(hat[m]) * coeff_scale * coeff_scale;
    }
    n.grad_sq = 4.0 * M_PI * (g.r_max / 2.0) * sum;
  }
  n.h1 = std::sqrt(n.mass + n.grad_sq);
  return n;
}

double lr_norm(const ComplexField& u, double r) {
  if (std::isinf(r)) {
    double sup = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) sup = std::max(sup, u.abs_u(j));
    return sup;
  }
  if (!(r >= 1.0)) throw std::invalid_argument("Lr norm needs r >= 1");
  double acc = 0.0;
  if (u.is_torus()) {
    const double dx = u.torus().dx();
    for (const cdouble& z : u.values()) acc += std::pow(std::abs(z), r);
    acc *= dx;
  } else {
    const RadialGrid3D& g = u.radial();
    const double dr = g.dr();
    for (std::size_t j = 0; j < u.size(); ++j) {
      double rad = g.node(j);
      acc += std::pow(std::abs(u.values()[j]) / rad, r) * rad * rad;
    }
    acc *= 4.0 * M_PI * dr;
  }
  return std::pow(acc, 1.0 / r);
}

double spacetime_norm(const std::vector<std::pair<double, ComplexField>>& snaps,
                      double q, double r) {
  if (std::isinf(q)) {
    double best = 0.0;
    for (const auto& [t, f] : snaps) best = std::max(best, lr_norm(f, r));
    return best;
  }
  if (snaps.size() < 2) {
    throw std::invalid_argument("spacetime norm with finite q needs at least 2 snapshots");
  }
  double acc = 0.0;
  double prev_t = snaps.front().first;
  double prev_val = std::pow(lr_norm(snaps.front().second, r), q);
  for (std::size_t i = 1; i < snaps.size(); ++i) {
    double t = snaps[i].first;
    if (t < prev_t) throw std::invalid_argument("snapshots must be time-ordered");
    double val = std::pow(lr_norm(snaps[i].second, r), q);
    acc += 0.5 * (val + prev_val) * (t - prev_t);
    prev_t = t;
    prev_val = val;
  }
  return std::pow(acc, 1.0 / q);
}

std::vector<cdouble> spectral_derivative(const ComplexField& u) {
  std::vector<cdouble> out(u.size());
  if (u.is_torus()) {
    const TorusGrid1D& g = u.torus();
    std::vector<cdouble> hat(u.size());
    transforms::dft_forward(u.values(), hat);
    for (std::size_t k = 0; k < hat.size(); ++k) {
      hat[k] *= cdouble(0.0, g.wavenumber(k));
    }
    transforms::dft_backward(hat, out);
    const double inv = 1.0 / static_cast<double>(g.points);
    for (cdouble& z : out) z *= inv;
  } else {
    const RadialGrid3D& g = u.radial();
    std::vector<cdouble> hat(u.size());
    transforms::dst1(u.values(), hat);
    const double coeff_scale = 1.0 / static_cast<double>(g.points);
    for (std::size_t m = 0; m < hat.size(); ++m) {
      hat[m] *= coeff_scale * g.wavenumber(m);
    }
    transforms::cosine_series_interior(std::span<const cdouble>(hat),
                                       std::span<cdouble>(out));
  }
  return out;
}

}  // namespace dmnls
