#include "dmnls/grid.hpp"

#include <stdexcept>

namespace dmnls {

namespace {
bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

TorusGrid1D::TorusGrid1D(double L, std::size_t M) : half_length(L), points(M) {
  if (!(L > 0.0)) throw std::invalid_argument("torus half-length must be positive");
  if (M < 8 || !is_power_of_two(M)) {
    throw std::invalid_argument("torus grid needs a power-of-two point count >= 8");
  }
}

RadialGrid3D::RadialGrid3D(double R, std::size_t M) : r_max(R), points(M) {
  if (!(R > 0.0)) throw std::invalid_argument("radial extent must be positive");
  if (M < 8) throw std::invalid_argument("radial grid needs at least 8 points");
}

}  // namespace dmnls
