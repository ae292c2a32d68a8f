#ifndef EIK_UPDATE_HPP
#define EIK_UPDATE_HPP

#include <optional>
#include <span>

#include "eik/interp.hpp"
#include "eik/problem.hpp"

namespace eik {

/// Per-orthant angle minimization settings. nested-1d runs one golden-section
/// search per angle, innermost angle first; multistart-sampled scans a tensor
/// grid of angles and refines the best multistart_count starts by coordinate
/// descent (the fallback for anisotropic speeds, where the nested ordering
/// argument does not apply).
struct MinimizerConfig {
  enum class Method { Nested1d, MultistartSampled };
  Method method = Method::Nested1d;
  int samples_per_angle = 24;
  double refine_tolerance = 1e-10;  // radians
  int multistart_count = 4;
};

void validate_minimizer(const MinimizerConfig& cfg);

/// Instrumentation shared by the solvers and the harness.
struct UpdateStats {
  long long objective_evals = 0;
};

/// Result of the full node update: the minimum over all 2^d orthants, the
/// minimizing direction (absent on target nodes) and the per-orthant minima.
struct UpdateOutcome {
  double value = 1.0;
  std::optional<Direction> best_direction;
  std::array<double, (1 << kMaxDim)> orthant_values{};
  int n_orthants = 0;
};

/// Minimize (1 - h/f(x,alpha)) * I[values](x + h*alpha) + h/f(x,alpha) over
/// the directions of one orthant. Directions with infeasible interpolation
/// weights are rejected (+inf); if nothing is feasible the orthant reports
/// the unreachable sentinel 1. Requires h < min(1/f_max, f_min), enforced at
/// solver construction.
std::pair<double, Direction> orthant_value(const Grid& g, std::span<const double> values, NodeId x,
                                           const Orthant& o, const SpeedField& speed, double h,
                                           const MinimizerConfig& cfg, double outside_value = 1.0,
                                           UpdateStats* stats = nullptr);

/// Full semi-Lagrangian update at x: 0 on target nodes, otherwise the
/// minimum of orthant_value over all 2^d orthants (ties broken by lowest
/// orthant code).
UpdateOutcome update_node(const Grid& g, std::span<const double> values, NodeId x,
                          const SpeedField& speed, const TargetSet& target, double h,
                          const MinimizerConfig& cfg, double outside_value = 1.0,
                          UpdateStats* stats = nullptr);

}  // namespace eik

#endif  // EIK_UPDATE_HPP
