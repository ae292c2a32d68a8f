#include "eik/mdp.hpp"

#include <cmath>
#include <stdexcept>

#include "eik/rng.hpp"

namespace eik {

TransitionDistribution transition(const Grid& g, NodeId x, const Direction& dir) {
  const BarycentricWeights w = barycentric(g, x, dir);
  if (!w.feasible) {
    throw std::domain_error("transition: rejected direction (infeasible interpolation weights)");
  }
  TransitionDistribution t;
  for (int k = 0; k < w.count; ++k) {
    const double p = w.weights[k];
    if (p <= 0.0) continue;  // clip the feasibility slack, drop zero-mass nodes
    if (!w.nodes.inside[k]) {
      throw std::domain_error("transition: positive weight falls outside the grid");
    }
    t.support[static_cast<std::size_t>(t.count++)] = {w.nodes.nodes[k], p};
  }
  return t;
}

Strategy replay_strategy(std::vector<Direction> controls) {
  Strategy s;
  s.kind = Strategy::Kind::Replay;
  s.decide = [controls = std::move(controls)](
                 std::span<const std::pair<NodeId, Direction>> history, NodeId) {
    if (history.size() >= controls.size()) {
      throw std::runtime_error("replay strategy ran out of controls");
    }
    return controls[history.size()];
  };
  return s;
}

long long default_step_cap(const BenchmarkInstance& inst, double h) {
  double diam2 = 0.0;
  for (int i = 0; i < inst.dim; ++i) {
    const double e = inst.box_upper[i] - inst.box_lower[i];
    diam2 += e * e;
  }
  return 50 * static_cast<long long>(std::ceil(std::sqrt(diam2) / h));
}

RolloutResult rollout(const BenchmarkInstance& inst, const SolverConfig& cfg,
                      const Strategy& strategy, NodeId x0, std::uint64_t rng_seed,
                      long long step_cap) {
  const Grid g = solver_grid(inst, cfg.h);
  const bool constrained = cfg.mode == SolverConfig::Mode::Constrained;
  if (constrained && !inst.domain.has_value()) {
    throw ConfigError("constrained rollout requires a benchmark with a domain");
  }
  if (x0.flat < 0 || x0.flat >= g.size()) throw ConfigError("rollout: x0 outside the grid");

  Rng rng(rng_seed);
  RolloutResult r;
  std::vector<std::pair<NodeId, Direction>> history;

  NodeId cur = x0;
  double survive = 1.0;  // product of (1 - h/f) along the realized path
  for (;;) {
    const Vec p = g.node_coord(cur);
    if (constrained && !inst.domain->contains(p)) {
      r.terminal = RolloutResult::Terminal::HitBoundary;
      r.cost = 1.0;
      return r;
    }
    if (inst.target.contains(p)) {
      r.terminal = RolloutResult::Terminal::ReachedTarget;
      r.cost = 1.0 - survive;
      return r;
    }
    if (r.steps >= step_cap) {
      // The truncated tail is charged as if unreachable (residual value 1),
      // keeping the estimator an upper bound.
      r.terminal = RolloutResult::Terminal::StepCap;
      r.cost = 1.0;
      return r;
    }

    const Direction dir = strategy.decide(history, cur);
    const BarycentricWeights w = barycentric(g, cur, dir);
    if (!w.feasible) {
      throw std::runtime_error("rollout: strategy returned an infeasible direction at node " +
                               std::to_string(cur.flat));
    }

    survive *= 1.0 - cfg.h / inst.speed(p, dir.alpha);
    history.emplace_back(cur, dir);
    ++r.steps;

    // Sample the stencil slot by CDF walk; the last positive slot absorbs
    // the rounding remainder.
    const double u = rng.uniform01();
    double acc = 0.0;
    int chosen = -1;
    for (int k = 0; k < w.count; ++k) {
      const double pk = std::max(w.weights[k], 0.0);
      if (pk <= 0.0) continue;
      acc += pk;
      chosen = k;
      if (u < acc) break;
    }
    if (chosen < 0 || !w.nodes.inside[chosen]) {
      r.terminal = RolloutResult::Terminal::HitBoundary;
      r.cost = 1.0;
      return r;
    }
    cur = w.nodes.nodes[chosen];
  }
}

GreedyPolicy::GreedyPolicy(const BenchmarkInstance& inst, const SolverConfig& cfg,
                           const ValueField& solved)
    : grid_(solved.grid), directions_(static_cast<std::size_t>(solved.grid.size())) {
  validate_step(inst.speed, cfg.h);
  validate_minimizer(cfg.minimizer);
  const bool constrained = cfg.mode == SolverConfig::Mode::Constrained;
  for (std::int64_t i = 0; i < grid_.size(); ++i) {
    const Vec p = grid_.node_coord(NodeId{i});
    if (inst.target.contains(p)) continue;
    if (constrained && inst.domain.has_value() && !inst.domain->contains(p)) continue;
    const UpdateOutcome out = update_node(grid_, solved.values, NodeId{i}, inst.speed, inst.target,
                                          cfg.h, cfg.minimizer);
    directions_[static_cast<std::size_t>(i)] = out.best_direction;
  }
}

Strategy GreedyPolicy::as_strategy() const {
  Strategy s;
  s.kind = Strategy::Kind::MarkovGreedy;
  s.decide = [this](std::span<const std::pair<NodeId, Direction>>, NodeId cur) {
    const auto& d = direction_at(cur);
    if (!d.has_value()) {
      throw std::runtime_error("greedy strategy has no direction at node " +
                               std::to_string(cur.flat));
    }
    return *d;
  };
  return s;
}

McEstimate monte_carlo_value(const BenchmarkInstance& inst, const SolverConfig& cfg,
                             const GreedyPolicy& policy, NodeId x0, long long n_samples,
                             std::uint64_t rng_seed) {
  if (n_samples < 1) throw ConfigError("monte_carlo_value: need at least one sample");
  const Strategy strategy = policy.as_strategy();
  const long long cap = default_step_cap(inst, cfg.h);

  McEstimate est;
  est.n_samples = n_samples;
  est.underpowered = n_samples < 100;
  // Welford update; keeps the spread exactly zero for identical samples.
  double mean = 0.0;
  double m2 = 0.0;
  for (long long i = 0; i < n_samples; ++i) {
    const RolloutResult r =
        rollout(inst, cfg, strategy, x0, rng_seed + static_cast<std::uint64_t>(i), cap);
    if (r.terminal == RolloutResult::Terminal::StepCap) ++est.truncated_runs;
    const double delta = r.cost - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (r.cost - mean);
  }
  est.mean = mean;
  if (n_samples >= 2) {
    const double var = std::max(0.0, m2 / static_cast<double>(n_samples - 1));
    est.std_error = std::sqrt(var / static_cast<double>(n_samples));
  }
  return est;
}

}  // namespace eik
