#pragma once

#include <optional>
#include <vector>

#include "dmnls/field.hpp"
#include "dmnls/spectral_engine.hpp"

namespace dmnls {

/// Per-snapshot monitored quantities.  Localized variants are populated
/// only when a weight is supplied on a radial grid.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double e_plus = 0.0;
  double e_minus = 0.0;
  double grad_sq = 0.0;
  double quartic = 0.0;
  double variance = 0.0;    // integral |x|^2 |u|^2
  double momentum = 0.0;    // 4 Im integral conj(u) x . grad u
  double virial_rhs = 0.0;  // 8 (gamma grad_sq - (3/4) quartic)
  std::optional<double> variance_w;
  std::optional<double> momentum_w;
  std::optional<double> virial_rhs_localized;
};

/// Truncated |x|^2 weight: w_R(x) = R^2 phi(|x|/R) with phi(s) = s^2 for
/// s <= 1, a C^2 quintic bridge on [1,3], constant for s >= 3, obeying
/// |phi'(s)| <= 2s and |phi''| <= 2.
struct LocalizedWeight {
  double R = 0.0;
  std::vector<double> w;        // w_R at the grid nodes
  std::vector<double> dw;       // d/dr w_R
  std::vector<double> d2w_rr;   // radial Hessian eigenvalue phi''(r/R)
  std::vector<double> d2w_tan;  // tangential eigenvalue phi'(s)/s

  LocalizedWeight(const RadialGrid3D& grid, double R);

  static double phi(double s);
  static double dphi(double s);
  static double d2phi(double s);
};

struct VirialQuantities {
  double variance = 0.0;
  double momentum = 0.0;
  double rhs_paper = 0.0;
};

struct LocalizedVirial {
  double term1 = 0.0;       // full virial right-hand side
  double term2 = 0.0;       // exterior Hessian-minus-gradient expression, <= 0
  double term3_bound = 0.0; // C * integral_{|x|>R} (R^{-2}|u|^2 + |u|^4)
  static constexpr double kTailConstant = 8.0;
};

struct TrappingCertificate {
  double delta = 0.0;
  double delta_prime = 0.0;
  double epsilon = 0.0;
  double c = 0.0;
  double y0 = 0.0;  // initial norm ratio
};

struct BlowupConditions {
  bool satisfied = false;
  double delta_margin = 0.0;  // 1 - M(u0)E+(u0) / (M(R+)E+(R+))
};

/// E+/E- from precomputed norms: E± = (gamma±/2) G ∓ (1/4) P.
std::pair<double, double> energies(const FieldNorms& n, double gamma_plus,
                                   double gamma_minus);
std::pair<double, double> energies(const ComplexField& u, double gamma_plus,
                                   double gamma_minus);

VirialQuantities virial_quantities(const ComplexField& u, double gamma);

LocalizedVirial localized_virial(const ComplexField& u,
                                 const LocalizedWeight& w, double gamma);

enum class VirialAuditKind { nonlinear, linear };

/// Least-squares prefactor kappa fitting the finite-difference second
/// derivative of the variance against the displayed right-hand side
/// (nonlinear runs) or against 8 gamma^2 grad_sq (linear runs).  Needs at
/// least 5 uniformly spaced snapshots.
double virial_prefactor_audit(double gamma,
                              const std::vector<DiagnosticsRecord>& records,
                              VirialAuditKind kind = VirialAuditKind::nonlinear);

/// Quantitative energy-trapping certificate.  Throws when the hypotheses
/// M(u0)E+(u0) <= (1-delta) M(R+)E+(R+) or the gradient lower bound fail.
TrappingCertificate trapping_certificate(const FieldNorms& u0,
                                         const FieldNorms& rplus,
                                         double gamma_plus, double delta);

BlowupConditions check_blowup_conditions(const FieldNorms& u0,
                                         const FieldNorms& rplus,
                                         double gamma_plus);

/// Full record for one snapshot; weight enables the localized columns.
DiagnosticsRecord compute_record(const ComplexField& u, double t,
                                 double gamma_plus, double gamma_minus,
                                 double gamma_now,
                                 const LocalizedWeight* weight = nullptr);

}  // namespace dmnls
