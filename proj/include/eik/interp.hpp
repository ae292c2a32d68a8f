#ifndef EIK_INTERP_HPP
#define EIK_INTERP_HPP

#include <span>

#include "eik/grid.hpp"

namespace eik {

/// Unit direction inside one orthant, parametrized by d-1 angles in
/// [0, pi/2]: |alpha_1| = cos t1, |alpha_2| = sin t1 cos t2, ...,
/// |alpha_d| = sin t1 ... sin t_{d-1}, then multiplied by the orthant signs.
struct Direction {
  std::array<double, kMaxDim> angles{};  // only the first dim-1 entries are used
  int n_angles = 0;
  Orthant orthant;
  Vec alpha;  // cached signed unit vector
};

/// Barycentric coefficients of x + h*alpha over the d+1 stencil nodes
/// (d axis nodes, then the diagonal). Weights always sum to 1; `feasible`
/// says whether they are all nonnegative, i.e. whether x + h*alpha lies in
/// the stencil simplex. Infeasible weights are reported, never thrown.
struct BarycentricWeights {
  std::array<double, kMaxDim + 1> weights{};
  StencilNodes nodes;
  int count = 0;  // == dim + 1
  bool feasible = false;
};

/// Weight slack: a coefficient this far below zero still counts as feasible.
inline constexpr double kWeightTolerance = 1e-12;

namespace detail {

/// Simplex coefficients from the orthant-local direction magnitudes.
/// Axis weight l is a_l - s and the diagonal weight is s, with
/// s = (sum a - 1)/(d-1); in d = 1 the single neighbor takes weight 1.
/// Returns the feasibility of the resulting weights. Hot path: no checks,
/// no allocation.
inline bool simplex_weights(const double* alpha_abs, int dim, double* w) {
  if (dim == 1) {
    w[0] = 1.0;
    w[1] = 0.0;
    return true;
  }
  double sum = 0.0;
  for (int l = 0; l < dim; ++l) sum += alpha_abs[l];
  const double s = (sum - 1.0) / static_cast<double>(dim - 1);
  bool feasible = s >= -kWeightTolerance;
  for (int l = 0; l < dim; ++l) {
    w[l] = alpha_abs[l] - s;
    feasible = feasible && w[l] >= -kWeightTolerance;
  }
  w[dim] = s;
  return feasible;
}

/// Orthant-local |alpha| from the angle vector (no signs applied).
inline void alpha_from_angles(const double* angles, int dim, double* alpha_abs) {
  double sin_prod = 1.0;
  for (int k = 0; k < dim - 1; ++k) {
    alpha_abs[k] = sin_prod * std::cos(angles[k]);
    sin_prod *= std::sin(angles[k]);
  }
  alpha_abs[dim - 1] = sin_prod;
}

}  // namespace detail

/// Build a Direction from angles in [0, pi/2] (closed ends allowed so the
/// per-orthant search covers axis directions). Angles outside the range are
/// a domain error.
Direction direction_from_angles(std::span<const double> angles, const Orthant& o);

/// Barycentric coefficients of x + h*alpha over the stencil of (x, orthant).
BarycentricWeights barycentric(const Grid& g, NodeId x, const Direction& dir);

/// Sum of weight_k * value(node_k); stencil entries outside the grid
/// contribute `outside_value`.
inline double interpolate(std::span<const double> values, const BarycentricWeights& w,
                          double outside_value) {
  double acc = 0.0;
  for (int k = 0; k < w.count; ++k) {
    const double vk =
        w.nodes.inside[k] ? values[static_cast<std::size_t>(w.nodes.nodes[k].flat)] : outside_value;
    acc += w.weights[k] * vk;
  }
  return acc;
}

}  // namespace eik

#endif  // EIK_INTERP_HPP
