#ifndef EIK_MDP_HPP
#define EIK_MDP_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "eik/solve.hpp"

namespace eik {

/// The barycentric stencil read as Markov transition probabilities: the
/// chain moves from x to stencil nodes of (x, dir) with the interpolation
/// weights as probabilities. Mean displacement is h*alpha and the trace of
/// the displacement covariance is at most h^2.
struct TransitionDistribution {
  struct Entry {
    NodeId node;
    double probability;
  };
  std::array<Entry, kMaxDim + 1> support{};
  int count = 0;
};

/// Transition distribution at (x, dir). Throws std::domain_error when the
/// direction's weights are infeasible or when positive weight falls outside
/// the grid (callers must not sample there; rollout treats grid exit as a
/// boundary hit instead).
TransitionDistribution transition(const Grid& g, NodeId x, const Direction& dir);

/// A pure strategy: control as a deterministic function of the history
/// (state, control) pairs and the current state.
struct Strategy {
  enum class Kind { MarkovGreedy, Replay, Custom };
  Kind kind = Kind::Custom;
  std::function<Direction(std::span<const std::pair<NodeId, Direction>> history, NodeId current)>
      decide;
};

/// Replays a fixed control sequence (by history length).
Strategy replay_strategy(std::vector<Direction> controls);

struct RolloutResult {
  enum class Terminal { ReachedTarget, HitBoundary, StepCap };
  double cost = 0.0;
  long long steps = 0;
  Terminal terminal = Terminal::ReachedTarget;
};

/// Samples the controlled chain from x0 under `strategy` until it reaches K
/// (product-form cost), leaves the grid or the constraint domain (cost 1),
/// or hits step_cap (cost 1, flagged). Same seed, same path.
RolloutResult rollout(const BenchmarkInstance& inst, const SolverConfig& cfg,
                      const Strategy& strategy, NodeId x0, std::uint64_t rng_seed,
                      long long step_cap);

/// Default rollout truncation: 50 * (box diameter / h) steps.
long long default_step_cap(const BenchmarkInstance& inst, double h);

/// Per-node optimal controls recovered from a solved field: at every
/// updatable node, the argmin direction of the node update. The policy keeps
/// a copy of the grid and the transition of each node for fast sampling.
class GreedyPolicy {
 public:
  GreedyPolicy(const BenchmarkInstance& inst, const SolverConfig& cfg, const ValueField& solved);

  const Grid& grid() const { return grid_; }
  const std::optional<Direction>& direction_at(NodeId n) const {
    return directions_[static_cast<std::size_t>(n.flat)];
  }
  Strategy as_strategy() const;

 private:
  Grid grid_;
  std::vector<std::optional<Direction>> directions_;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long n_samples = 0;
  bool underpowered = false;  // too few samples for the 3-sigma gate to mean much
  long long truncated_runs = 0;
};

/// Monte-Carlo estimate of the stochastic cost under the greedy strategy,
/// started at x0. Rollout i uses sub-stream i of rng_seed.
McEstimate monte_carlo_value(const BenchmarkInstance& inst, const SolverConfig& cfg,
                             const GreedyPolicy& policy, NodeId x0, long long n_samples,
                             std::uint64_t rng_seed);

}  // namespace eik

#endif  // EIK_MDP_HPP
