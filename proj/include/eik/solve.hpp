#ifndef EIK_SOLVE_HPP
#define EIK_SOLVE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "eik/problem.hpp"
#include "eik/update.hpp"

namespace eik {

/// Fast-marching node state.
enum class Label : std::uint8_t { Far, Narrow, Accepted };

/// Kruzkov-scale values on a grid plus the marching labels. Values live in
/// [0,1]; 1 is the unreachable sentinel.
struct ValueField {
  Grid grid;
  std::vector<double> values;
  std::vector<Label> labels;

  explicit ValueField(const Grid& g)
      : grid(g),
        values(static_cast<std::size_t>(g.size()), 1.0),
        labels(static_cast<std::size_t>(g.size()), Label::Far) {}

  double at(NodeId n) const { return values[static_cast<std::size_t>(n.flat)]; }
};

/// Run instrumentation. For fast marching `iterations_or_pops` counts
/// accepted nodes; for value iteration it counts full sweeps.
struct SolveReport {
  long long iterations_or_pops = 0;
  long long heap_ops = 0;
  long long objective_evals = 0;
  double residual = 0.0;  // value iteration only
  double wall_time_s = 0.0;
  bool converged = true;  // value iteration: residual <= tolerance reached
};

struct SolverConfig {
  enum class Mode { Unconstrained, Constrained };
  double h = 0.0;
  Mode mode = Mode::Unconstrained;
  double vi_tolerance = 1e-12;
  long long vi_max_iters = 100000;
  MinimizerConfig minimizer;
};

struct SolveResult {
  ValueField field;
  SolveReport report;
};

/// The grid a solver run would use: the instance box covered with step h.
Grid solver_grid(const BenchmarkInstance& inst, double h);

/// Throws ConfigError unless 0 < h < min(1/f_max, f_min), the range on which
/// the discount weight 1 - h/f stays in (0,1) and the scheme's estimates
/// apply.
void validate_step(const SpeedField& speed, double h);

/// Single-pass fast marching (causal min-heap ordering, lazy invalidation).
/// `accept_trace`, when given, receives the accepted values in pop order.
SolveResult fast_march(const BenchmarkInstance& inst, const SolverConfig& cfg,
                       std::vector<double>* accept_trace = nullptr);

/// Value iteration on the full-grid update operator: Gauss-Seidel sweeps in
/// alternating row-major order from the all-unreachable start, until the
/// sup-change per sweep drops below cfg.vi_tolerance. Non-convergence within
/// vi_max_iters is reported, not thrown.
SolveResult value_iterate(const BenchmarkInstance& inst, const SolverConfig& cfg);

/// State-constrained variants: nodes outside the closure of inst.domain are
/// pinned at 1 and excluded from updates.
SolveResult fast_march_constrained(const BenchmarkInstance& inst, SolverConfig cfg,
                                   std::vector<double>* accept_trace = nullptr);
SolveResult value_iterate_constrained(const BenchmarkInstance& inst, SolverConfig cfg);

/// One Jacobi application of the full-grid update operator against a frozen
/// field (target nodes map to 0). The operator whose contraction the tests
/// exercise; the solvers above share its node update.
std::vector<double> apply_full_update(const Grid& g, const SpeedField& speed,
                                      const TargetSet& target, double h,
                                      const MinimizerConfig& cfg, std::span<const double> in,
                                      UpdateStats* stats = nullptr);

}  // namespace eik

#endif  // EIK_SOLVE_HPP
