#pragma once

#include <cstddef>

namespace dmnls_test {

struct PetviashviliResult {
  double peak = 0.0;       // Q(0)
  double mass = 0.0;       // integral Q^2 over R^3
  double grad_sq = 0.0;    // integral |grad Q|^2
  double quartic = 0.0;    // integral Q^4
  int iterations = 0;
  bool converged = false;
};

/// Independent ground-state oracle: spectral renormalization fixed-point
/// iteration for -Q + Laplacian Q + Q^3 = 0 on a Dirichlet sine grid.
/// Shares no code path with the shooting solver it cross-checks.
PetviashviliResult petviashvili_ground_state(double r_max = 16.0,
                                             std::size_t points = 4096,
                                             double tol = 1e-13,
                                             int max_iterations = 400);

}  // namespace dmnls_test
