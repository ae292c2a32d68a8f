#ifndef EIK_ANALYSIS_HPP
#define EIK_ANALYSIS_HPP

#include <span>
#include <utility>
#include <vector>

#include "eik/mdp.hpp"
#include "eik/solve.hpp"

namespace eik {

/// Errors of a mesh-refinement sweep plus the least-squares power-law fit
/// error ~ fitted_constant * h^fitted_order on (log h, log error).
struct ConvergenceRecord {
  std::vector<double> h_values;
  std::vector<double> sup_errors;
  double fitted_order = 0.0;
  double fitted_constant = 0.0;
};

/// Per-|z| maxima of the centered second difference ratio
/// (V(x+z) - 2V(x) + V(x-z)) / |z|^2 over grid-aligned offsets z.
struct SemiconcavityProbe {
  std::vector<double> z_magnitudes;
  std::vector<double> max_ratio;
};

/// Which scale the probe differences: Kruzkov values v, or times
/// T = -log(1-v) (nodes at the unreachable sentinel are skipped).
enum class ProbeScale { Kruzkov, Time };

/// Least-squares fit of err ~ C * h^p on logs; returns (p, C).
std::pair<double, double> fit_power_law(std::span<const double> h, std::span<const double> err);

/// Sup of |V - analytic_value| over nodes at distance >= margin from the
/// computational box boundary and outside the target. Requires an analytic
/// solution and margin >= 2h; an empty interior region is an error.
double interior_sup_error(const ValueField& V, const BenchmarkInstance& inst, double margin);

/// Fast-march the instance at every h in h_list (strictly decreasing, at
/// least 3 entries), measure interior sup errors at `margin`, fit the order.
/// Solves run concurrently; a failing h is identified in the error message.
ConvergenceRecord convergence_sweep(const BenchmarkInstance& inst, std::span<const double> h_list,
                                    double margin, const SolverConfig& base_cfg);

/// Second-difference probe of a solved field: for every step count m in
/// z_steps and every axis, scan all x with x +- z in range and x, x +- z
/// outside the target, and record the per-|z| maximum ratio.
SemiconcavityProbe semiconcavity_probe(const ValueField& V, const TargetSet& target,
                                       std::span<const int> z_steps,
                                       ProbeScale scale = ProbeScale::Kruzkov);

struct BruteForceValue {
  double value = 1.0;
  bool truncated = false;  // nothing reached the target within max_steps
};

/// Exact dynamic-programming oracle over the grid-restricted control class
/// (axis moves only, so states stay on the lattice): optimal product-form
/// cost from x0 within max_steps steps. Deliberately small: requires
/// M <= 10^4 and max_steps <= 60.
BruteForceValue brute_force_discrete_value(const BenchmarkInstance& inst, double h, NodeId x0,
                                           int max_steps);

struct ComplexityPoint {
  long long per_axis = 0;
  long long m_nodes = 0;
  long long pops = 0;
  long long heap_ops = 0;
  long long reachable = 0;  // nodes with final value < 1
  double wall_time_s = 0.0;
};

/// Fast-march the instance at each per-axis resolution (>= 3 of them) and
/// collect node/heap counters for the M log M trend check.
std::vector<ComplexityPoint> complexity_scaling(const BenchmarkInstance& inst,
                                                std::span<const long long> per_axis_sizes,
                                                const MinimizerConfig& minimizer);

/// Consecutive-size check: heap_ops growth within `slack` of M log M growth.
bool complexity_trend_ok(std::span<const ComplexityPoint> points, double slack = 1.5);

/// Locate the grid node at coordinates p (exact match up to 1e-9*h).
NodeId node_at(const Grid& g, const Vec& p);

}  // namespace eik

#endif  // EIK_ANALYSIS_HPP
