#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dmnls/field.hpp"

namespace dmnls {

/// Radial ground-state profile: Q for gamma_scale = 1, or its spatial
/// rescaling R_+(x) = Q(x / sqrt(gamma_plus)) for gamma_scale = gamma_plus.
/// Immutable once returned by the solver.
class GroundStateProfile {
 public:
  GroundStateProfile(double gamma_scale, std::vector<double> radii,
                     std::vector<double> samples, double mass, double grad_sq,
                     double quartic, double tail_coef, double tail_rate,
                     double far_field_deviation);

  double gamma_scale() const { return gamma_scale_; }
  double peak() const { return samples_.front(); }  // value at r = 0
  double mass() const { return mass_; }
  double grad_sq() const { return grad_sq_; }
  double quartic() const { return quartic_; }
  double r_max() const { return radii_.back(); }
  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& samples() const { return samples_; }

  /// Relative spread of the fitted decay coefficient near the matching
  /// radius; small values certify the C e^{-r} / r far field.
  double far_field_deviation() const { return far_field_deviation_; }

  /// Profile value at any radius: cubic spline inside the sampled range,
  /// matched exponential tail beyond it.
  double value(double r) const;

  /// Sample amplitude * lambda * profile(lambda r) onto a radial grid.
  ComplexField sample(const RadialGrid3D& grid, double amplitude = 1.0,
                      double lambda = 1.0) const;

 private:
  double gamma_scale_;
  std::vector<double> radii_;    // uniform, starting at 0
  std::vector<double> samples_;  // profile values
  double mass_, grad_sq_, quartic_;
  double tail_coef_, tail_rate_;
  double far_field_deviation_;
  struct Spline;
  std::shared_ptr<const Spline> spline_;
};

/// Solve Q'' + (2/r) Q' - Q + Q^3 = 0, Q'(0) = 0, Q(r) -> 0, by bisection
/// shooting on the peak value in [0.1, 100].  tol gates the internal
/// consistency checks (Pohozaev residuals, far-field match); the ODE
/// integration itself runs at 1e-12 tolerances.
GroundStateProfile solve_ground_state(double tol = 1e-6, double r_max = 20.0,
                                      std::size_t nodes = 4001);

/// R_+(x) = Q(x / sqrt(gamma_plus)); norms transform exactly:
/// M -> g^{3/2} M, G -> g^{1/2} G, P -> g^{3/2} P.
GroundStateProfile rescale_to_rplus(const GroundStateProfile& q,
                                    double gamma_plus);

/// Sharp Gagliardo-Nirenberg constant from the stored norms:
/// C0 = P / (sqrt(M) G^{3/2}).
double gn_constant(const GroundStateProfile& p);

/// Residuals of -M - g G + P = 0 and (3/2) M + (g/2) G - (3/4) P = 0,
/// both normalized by M.
std::pair<double, double> pohozaev_residuals(const GroundStateProfile& p);

/// Profile cache: CSV with the header
/// "# dmnls-groundstate v1, gamma_scale=<v>, M=<v>, G=<v>, P=<v>".
void save_profile(const GroundStateProfile& p, const std::string& path);
GroundStateProfile load_profile(const std::string& path);

/// Load from cache when the header's gamma_scale matches, else solve and
/// (when path is nonempty) write the cache.
GroundStateProfile cached_ground_state(const std::string& cache_path,
                                       double tol = 1e-6, double r_max = 20.0,
                                       std::size_t nodes = 4001);

}  // namespace dmnls
