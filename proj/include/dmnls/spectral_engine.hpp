#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dmnls/dispersion_map.hpp"
#include "dmnls/field.hpp"

namespace dmnls {

/// Integrals of the field monitored everywhere: all are defined with the
/// continuum normalization (d=1 torus or d=3 radial measure 4 pi r^2 dr).
struct FieldNorms {
  double mass = 0.0;        // integral |u|^2
  double grad_sq = 0.0;     // integral |grad u|^2
  double l4_quartic = 0.0;  // integral |u|^4
  double sup = 0.0;         // sup |u| over nodes
  double h1 = 0.0;          // sqrt(mass + grad_sq)
};

struct SplitStepConfig {
  double dt_max = 1e-3;
  double blowup_sup_factor = 1e6;      // threshold = factor * initial sup
  double blowup_h1_factor = 1e6;       // threshold = factor * initial H1
  std::size_t snapshot_stride = 16;
  std::size_t h1_check_stride = 1;     // spectral H1 test every k-th step
  bool nonlinearity_enabled = true;
  int nonlinearity_power = 2;          // p in |u|^p u
};

struct EvolveOutcome {
  bool blowup_detected = false;
  double t_star = 0.0;       // midpoint of the bracketing step when detected
  double t_end = 0.0;        // last time reached
  std::size_t steps = 0;
};

using SnapshotObserver = std::function<void(double t, const ComplexField&)>;

/// e^{i DeltaGamma Laplacian} applied spectrally; exactly unitary in the
/// discrete L2 inner product up to transform round-off.
ComplexField linear_propagate(const ComplexField& phi, double delta_gamma);

/// Exact solution of the substep i u_t + |u|^p u = 0 over time h:
/// u -> u e^{i h |u|^p}.  Pointwise modulus preserving.
ComplexField nonlinear_phase(const ComplexField& u, double h, int p = 2);

/// One Strang step over [t, t+h]; requires the whole step to lie inside a
/// single segment of the dispersion map.
ComplexField strang_step(const ComplexField& u, double t, double h,
                         const DispersionMap& map,
                         const SplitStepConfig& cfg = {});

/// Advance u from t0 to t1 with steps of size at most cfg.dt_max,
/// subdividing exactly at the dispersion map's breakpoints.  The observer
/// (if given) runs at t0, after every snapshot_stride-th step, and at the
/// final time.  Returns early with blowup_detected when the sup-norm or H1
/// threshold trips or a non-finite value appears.
EvolveOutcome evolve(ComplexField& u, double t0, double t1,
                     const DispersionMap& map, const SplitStepConfig& cfg,
                     const SnapshotObserver& observer = nullptr);

FieldNorms norms(const ComplexField& u);

/// L^r spatial norm with the grid's continuum measure; r may be infinity.
double lr_norm(const ComplexField& u, double r);

/// Composite trapezoidal L^q_t L^r_x norm of a sampled trajectory; q = inf
/// takes the max over snapshots.
double spacetime_norm(const std::vector<std::pair<double, ComplexField>>& snaps,
                      double q, double r);

/// Spectral derivative: du/dx on the torus, dv/dr on the radial grid.
std::vector<cdouble> spectral_derivative(const ComplexField& u);

}  // namespace dmnls
