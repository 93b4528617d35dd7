#include "dmnls/field.hpp"

#include <cmath>
#include <stdexcept>

namespace dmnls {

ComplexField::ComplexField(TorusGrid1D grid, std::vector<cdouble> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid.points) {
    throw std::invalid_argument("torus field length must equal grid points");
  }
}

ComplexField::ComplexField(RadialGrid3D grid, std::vector<cdouble> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid.interior_points()) {
    throw std::invalid_argument("radial field length must equal interior points");
  }
}

ComplexField ComplexField::zeros(const TorusGrid1D& grid) {
  return ComplexField(grid, std::vector<cdouble>(grid.points));
}

ComplexField ComplexField::zeros(const RadialGrid3D& grid) {
  return ComplexField(grid, std::vector<cdouble>(grid.interior_points()));
}

ComplexField ComplexField::sample(const TorusGrid1D& grid,
                                  const std::function<cdouble(double)>& u) {
  std::vector<cdouble> vals(grid.points);
  for (std::size_t j = 0; j < grid.points; ++j) vals[j] = u(grid.node(j));
  return ComplexField(grid, std::move(vals));
}

ComplexField ComplexField::sample(const RadialGrid3D& grid,
                                  const std::function<cdouble(double)>& u) {
  std::vector<cdouble> vals(grid.interior_points());
  for (std::size_t j = 0; j < vals.size(); ++j) {
    double r = grid.node(j);
    vals[j] = r * u(r);
  }
  return ComplexField(grid, std::move(vals));
}

double ComplexField::abs_u(std::size_t j) const {
  if (is_torus()) return std::abs(values_[j]);
  return std::abs(values_[j]) / radial().node(j);
}

bool ComplexField::all_finite() const {
  for (const cdouble& z : values_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

}  // namespace dmnls
