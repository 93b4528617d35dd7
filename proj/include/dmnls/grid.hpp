#pragma once

#include <cmath>
#include <cstddef>
#include <variant>

namespace dmnls {

/// Uniform periodic grid on [-L, L) with M (power of two) points.
/// Fourier modes are e^{i xi_m x} with xi_m = pi m / L,
/// m = -M/2 .. M/2 - 1.
struct TorusGrid1D {
  double half_length = 0.0;  // L
  std::size_t points = 0;    // M

  TorusGrid1D(double L, std::size_t M);

  double dx() const { return 2.0 * half_length / static_cast<double>(points); }
  double node(std::size_t j) const {
    return -half_length + static_cast<double>(j) * dx();
  }
  /// Wavenumber of FFT bin k (negative frequencies in the upper half).
  double wavenumber(std::size_t k) const {
    auto m = static_cast<double>(k < points / 2
                                     ? static_cast<long>(k)
                                     : static_cast<long>(k) -
                                           static_cast<long>(points));
    return M_PI * m / half_length;
  }
  bool operator==(const TorusGrid1D&) const = default;
};

/// Radial grid for 3d radial fields.  Fields are stored as v = r u at the
/// interior nodes r_j = j dr, j = 1..M-1; v(0) = v(R_max) = 0 by the
/// Dirichlet sine transform.  Sine wavenumbers are k_m = pi m / R_max.
struct RadialGrid3D {
  double r_max = 0.0;      // R_max
  std::size_t points = 0;  // M; M-1 interior nodes carry data

  RadialGrid3D(double R, std::size_t M);

  double dr() const { return r_max / static_cast<double>(points); }
  /// Interior node j = 0..M-2 sits at radius (j+1) dr.
  double node(std::size_t j) const {
    return static_cast<double>(j + 1) * dr();
  }
  double wavenumber(std::size_t m) const {
    return M_PI * static_cast<double>(m + 1) / r_max;
  }
  std::size_t interior_points() const { return points - 1; }
  bool operator==(const RadialGrid3D&) const = default;
};

using Grid = std::variant<TorusGrid1D, RadialGrid3D>;

}  // namespace dmnls
