#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "dmnls/grid.hpp"

namespace dmnls {

using cdouble = std::complex<double>;

/// Complex-valued discretized wavefunction.  On a torus grid the values are
/// u at the grid nodes; on a radial grid they are v = r u at the interior
/// nodes.
class ComplexField {
 public:
  ComplexField(TorusGrid1D grid, std::vector<cdouble> values);
  ComplexField(RadialGrid3D grid, std::vector<cdouble> values);

  static ComplexField zeros(const TorusGrid1D& grid);
  static ComplexField zeros(const RadialGrid3D& grid);

  /// Sample u(x) on a torus grid.
  static ComplexField sample(const TorusGrid1D& grid,
                             const std::function<cdouble(double)>& u);
  /// Sample a radial profile u(r); stores v = r u.
  static ComplexField sample(const RadialGrid3D& grid,
                             const std::function<cdouble(double)>& u);

  const Grid& grid() const { return grid_; }
  bool is_torus() const { return std::holds_alternative<TorusGrid1D>(grid_); }
  const TorusGrid1D& torus() const { return std::get<TorusGrid1D>(grid_); }
  const RadialGrid3D& radial() const { return std::get<RadialGrid3D>(grid_); }

  const std::vector<cdouble>& values() const { return values_; }
  std::vector<cdouble>& values() { return values_; }
  std::size_t size() const { return values_.size(); }

  /// |u| at stored node j (radial grids divide out the r weight).
  double abs_u(std::size_t j) const;

  bool all_finite() const;

 private:
  Grid grid_;
  std::vector<cdouble> values_;
};

}  // namespace dmnls
