#include "dmnls/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace dmnls {

std::pair<double, double> energies(const FieldNorms& n, double gamma_plus,
                                   double gamma_minus) {
  double e_plus = 0.5 * gamma_plus * n.grad_sq - 0.25 * n.l4_quartic;
  double e_minus = 0.5 * gamma_minus * n.grad_sq + 0.25 * n.l4_quartic;
  return {e_plus, e_minus};
}

std::pair<double, double> energies(const ComplexField& u, double gamma_plus,
                                   double gamma_minus) {
  return energies(norms(u), gamma_plus, gamma_minus);
}

VirialQuantities virial_quantities(const ComplexField& u, double gamma) {
  VirialQuantities out;
  const FieldNorms n = norms(u);
  out.rhs_paper = 8.0 * (gamma * n.grad_sq - 0.75 * n.l4_quartic);

  std::vector<cdouble> du = spectral_derivative(u);
  if (u.is_torus()) {
    const TorusGrid1D& g = u.torus();
    const double dx = g.dx();
    double var = 0.0, mom = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      double x = g.node(j);
      var += x * x * std::norm(u.values()[j]);
      mom += x * std::imag(std::conj(u.values()[j]) * du[j]);
    }
    out.variance = var * dx;
    out.momentum = 4.0 * mom * dx;
  } else {
    const RadialGrid3D& g = u.radial();
    const double dr = g.dr();
    double var = 0.0, mom = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      double r = g.node(j);
      var += r * r * std::norm(u.values()[j]);
      // conj(u) (x . grad u) r^2 integrand reduces to r Im(conj(v) v')
      mom += r * std::imag(std::conj(u.values()[j]) * du[j]);
    }
    out.variance = 4.0 * M_PI * var * dr;
    out.momentum = 16.0 * M_PI * mom * dr;
  }
  return out;
}

LocalizedWeight::LocalizedWeight(const RadialGrid3D& grid, double R_) : R(R_) {
  if (!(R > 0.0)) throw std::invalid_argument("weight radius must be positive");
  const std::size_t n = grid.interior_points();
  w.resize(n);
  dw.resize(n);
  d2w_rr.resize(n);
  d2w_tan.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double r = grid.node(j);
    double s = r / R;
    w[j] = R * R * phi(s);
    dw[j] = R * dphi(s);
    d2w_rr[j] = d2phi(s);
    d2w_tan[j] = dphi(s) / s;
  }
}

double LocalizedWeight::phi(double s) {
  s = std::abs(s);
  if (s <= 1.0) return s * s;
  if (s >= 3.0) return 3.4;
  double t = s - 1.0;
  return 1.0 + t * (2.0 + t * (1.0 + t * (-1.5 + t * (0.5 - 0.05 * t))));
}

double LocalizedWeight::dphi(double s) {
  s = std::abs(s);
  if (s <= 1.0) return 2.0 * s;
  if (s >= 3.0) return 0.0;
  double t = s - 1.0;
  return 2.0 + t * (2.0 + t * (-4.5 + t * (2.0 - 0.25 * t)));
}

double LocalizedWeight::d2phi(double s) {
  s = std::abs(s);
  if (s <= 1.0) return 2.0;
  if (s >= 3.0) return 0.0;
  double t = s - 1.0;
  return 2.0 + t * (-9.0 + t * (6.0 - t));
}

LocalizedVirial localized_virial(const ComplexField& u,
                                 const LocalizedWeight& weight, double gamma) {
  if (u.is_torus()) {
    throw std::invalid_argument("localized virial needs a radial grid");
  }
  const RadialGrid3D& g = u.radial();
  if (3.0 * weight.R > g.r_max) {
    throw std::invalid_argument("weight support exceeds grid");
  }

  LocalizedVirial out;
  const FieldNorms n = norms(u);
  out.term1 = 8.0 * (gamma * n.grad_sq - 0.75 * n.l4_quartic);

  std::vector<cdouble> dv = spectral_derivative(u);
  const double dr = g.dr();
  double hess = 0.0, tail = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    double r = g.node(j);
    if (r <= weight.R) continue;
    // r^2 |du/dr|^2 = |v' - v/r|^2
    cdouble radial_grad = dv[j] - u.values()[j] / r;
    double grad2 = std::norm(radial_grad);
    hess += grad2 * (weight.d2w_rr[j] - 2.0);
    double v2 = std::norm(u.values()[j]);
    tail += v2 / (weight.R * weight.R) + v2 * v2 / (r * r);
  }
  out.term2 = 16.0 * M_PI * gamma * hess * dr;
  out.term3_bound = LocalizedVirial::kTailConstant * 4.0 * M_PI * tail * dr;
  return out;
}

double virial_prefactor_audit(double gamma,
                              const std::vector<DiagnosticsRecord>& records,
                              VirialAuditKind kind) {
  if (records.size() < 5) {
    throw std::invalid_argument("virial audit needs at least 5 snapshots");
  }
  const double dt = records[1].t - records[0].t;
  for (std::size_t i = 1; i < records.size(); ++i) {
    double step = records[i].t - records[i - 1].t;
    if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
      throw std::invalid_argument("virial audit needs uniform snapshot spacing");
    }
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    double d2v = (records[i + 1].variance - 2.0 * records[i].variance +
                  records[i - 1].variance) /
                 (dt * dt);
    double rhs = (kind == VirialAuditKind::nonlinear)
                     ? records[i].virial_rhs
                     : 8.0 * gamma * gamma * records[i].grad_sq;
    num += d2v * rhs;
    den += rhs * rhs;
  }
  if (den == 0.0) throw std::invalid_argument("virial audit rhs vanishes");
  return num / den;
}

namespace {

// smallest root y > 1 of 3y^2 - 2y^3 = 1 - delta, by bisection
double norm_ratio_root(double delta) {
  auto h = [](double y) { return 3.0 * y * y - 2.0 * y * y * y; };
  double lo = 1.0, hi = 1.5;
  const double target = 1.0 - delta;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    double mid = 0.5 * (lo + hi);
    // h is decreasing on [1, 1.5] from 1 down to 0
    if (h(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TrappingCertificate trapping_certificate(const FieldNorms& u0,
                                         const FieldNorms& rplus,
                                         double gamma_plus, double delta) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw std::invalid_argument("delta must lie in (0, 1]");
  }
  const double e_u0 = energies(u0, gamma_plus, 1.0).first;
  const double e_r = energies(rplus, gamma_plus, 1.0).first;
  const double me_u0 = u0.mass * e_u0;
  const double me_r = rplus.mass * e_r;
  if (me_u0 > (1.0 - delta) * me_r + 1e-12 * std::abs(me_r)) {
    throw std::domain_error(
        "trapping hypothesis violated: M(u0) E+(u0) > (1-delta) M(R+) E+(R+)");
  }
  const double grad_prod_u0 = std::sqrt(u0.mass * u0.grad_sq);
  const double grad_prod_r = std::sqrt(rplus.mass * rplus.grad_sq);
  if (grad_prod_u0 < grad_prod_r * (1.0 - 1e-12)) {
    throw std::domain_error(
        "trapping hypothesis violated: ||u0|| ||grad u0|| < ||R+|| ||grad R+||");
  }

  TrappingCertificate cert;
  cert.delta = delta;
  cert.delta_prime = norm_ratio_root(delta) - 1.0;
  const double dp = cert.delta_prime;
  const double bracket = delta + 2.0 * dp + dp * dp;
  // The critical epsilon (integrand bound degenerates to zero) is
  // bracket / (2 (1+dp)^2); take half of it so the bound c below is
  // attained with equality by a datum that saturates the hypotheses.
  cert.epsilon = bracket / (4.0 * (1.0 + dp) * (1.0 + dp));
  cert.c = gamma_plus * rplus.mass * rplus.grad_sq / (2.0 * u0.mass) *
           (0.5 * bracket);
  cert.y0 = grad_prod_u0 / grad_prod_r;
  return cert;
}

BlowupConditions check_blowup_conditions(const FieldNorms& u0,
                                         const FieldNorms& rplus,
                                         double gamma_plus) {
  BlowupConditions out;
  const double e_u0 = energies(u0, gamma_plus, 1.0).first;
  const double e_r = energies(rplus, gamma_plus, 1.0).first;
  const double me_u0 = u0.mass * e_u0;
  const double me_r = rplus.mass * e_r;
  out.delta_margin = 1.0 - me_u0 / me_r;
  const bool product_ok = me_u0 < me_r;
  const bool gradient_ok =
      std::sqrt(u0.mass * u0.grad_sq) >= std::sqrt(rplus.mass * rplus.grad_sq);
  out.satisfied = product_ok && gradient_ok;
  return out;
}

DiagnosticsRecord compute_record(const ComplexField& u, double t,
                                 double gamma_plus, double gamma_minus,
                                 double gamma_now,
                                 const LocalizedWeight* weight) {
  DiagnosticsRecord rec;
  rec.t = t;
  const FieldNorms n = norms(u);
  rec.mass = n.mass;
  rec.grad_sq = n.grad_sq;
  rec.quartic = n.l4_quartic;
  auto [ep, em] = energies(n, gamma_plus, gamma_minus);
  rec.e_plus = ep;
  rec.e_minus = em;
  VirialQuantities vq = virial_quantities(u, gamma_now);
  rec.variance = vq.variance;
  rec.momentum = vq.momentum;
  rec.virial_rhs = vq.rhs_paper;
  if (weight && !u.is_torus()) {
    LocalizedVirial lv = localized_virial(u, *weight, gamma_now);
    double var_w = 0.0, mom_w = 0.0;
    const RadialGrid3D& g = u.radial();
    std::vector<cdouble> dv = spectral_derivative(u);
    for (std::size_t j = 0; j < u.size(); ++j) {
      double r = g.node(j);
      double v2 = std::norm(u.values()[j]);
      var_w += weight->w[j] * v2;
      cdouble radial_grad = dv[j] - u.values()[j] / r;
      // conj(u) du/dr w' r^2 integrand in v variables
      mom_w += weight->dw[j] * std::imag(std::conj(u.values()[j]) * radial_grad);
    }
    rec.variance_w = 4.0 * M_PI * var_w * g.dr();
    // 2 Im integral of conj(u) grad u . grad w, so the w -> |x|^2 limit
    // recovers the unweighted momentum
    rec.momentum_w = 2.0 * 4.0 * M_PI * mom_w * g.dr();
    rec.virial_rhs_localized = lv.term1 + lv.term2 + lv.term3_bound;
  }
  return rec;
}

}  // namespace dmnls
