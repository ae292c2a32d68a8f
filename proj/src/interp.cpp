#include "eik/interp.hpp"

#include <cmath>
#include <stdexcept>

namespace eik {

Direction direction_from_angles(std::span<const double> angles, const Orthant& o) {
  const int dim = o.dim;
  if (static_cast<int>(angles.size()) != dim - 1) {
    throw std::domain_error("direction_from_angles: expected dim-1 angles");
  }
  constexpr double half_pi = 1.5707963267948966;
  Direction dir;
  dir.orthant = o;
  dir.n_angles = dim - 1;
  for (int k = 0; k < dim - 1; ++k) {
    if (!(angles[k] >= 0.0 && angles[k] <= half_pi)) {
      throw std::domain_error("direction_from_angles: angle outside [0, pi/2]");
    }
    dir.angles[k] = angles[k];
  }
  std::array<double, kMaxDim> mag{};
  detail::alpha_from_angles(dir.angles.data(), dim, mag.data());
  dir.alpha = Vec::zero(dim);
  for (int l = 0; l < dim; ++l) dir.alpha[l] = mag[l] * o.signs[l];
  return dir;
}

BarycentricWeights barycentric(const Grid& g, NodeId x, const Direction& dir) {
  if (dir.orthant.dim != g.dim()) {
    throw std::domain_error("barycentric: direction/grid dimension mismatch");
  }
  BarycentricWeights w;
  w.count = g.dim() + 1;
  w.nodes = g.stencil_nodes(x, dir.orthant);
  std::array<double, kMaxDim> mag{};
  for (int l = 0; l < g.dim(); ++l) mag[l] = std::abs(dir.alpha[l]);
  w.feasible = detail::simplex_weights(mag.data(), g.dim(), w.weights.data());
  return w;
}

}  // namespace eik
