#include "eik/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

namespace eik {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Offsets whose owner-stencils contain the center node: the 2d axis
// neighbors plus the 2^d diagonal corners (coinciding in d = 1).
std::vector<MultiIndex> stencil_offsets(int dim) {
  std::vector<MultiIndex> offs;
  for (int l = 0; l < dim; ++l) {
    for (int s : {+1, -1}) {
      MultiIndex m{};
      m[l] = s;
      offs.push_back(m);
    }
  }
  if (dim > 1) {
    for (int code = 0; code < (1 << dim); ++code) {
      MultiIndex m{};
      for (int l = 0; l < dim; ++l) m[l] = (code >> l) & 1 ? -1 : +1;
      offs.push_back(m);
    }
  }
  return offs;
}

// Grid-side view of a problem: target membership and (constrained mode)
// domain membership resolved per node, once.
struct GridProblem {
  Grid grid;
  std::vector<std::uint8_t> is_target;
  std::vector<std::uint8_t> is_blocked;  // outside the closure of O; pinned at 1
  std::vector<MultiIndex> offsets;
  long long n_targets = 0;

  GridProblem(const BenchmarkInstance& inst, const SolverConfig& cfg)
      : grid(solver_grid(inst, cfg.h)) {
    validate_step(inst.speed, cfg.h);
    validate_minimizer(cfg.minimizer);
    const bool constrained = cfg.mode == SolverConfig::Mode::Constrained;
    if (constrained && !inst.domain.has_value()) {
      throw ConfigError("constrained mode requires a benchmark with a constraint domain");
    }
    const std::size_t m = static_cast<std::size_t>(grid.size());
    is_target.assign(m, 0);
    is_blocked.assign(m, 0);
    for (std::int64_t i = 0; i < grid.size(); ++i) {
      const Vec p = grid.node_coord(NodeId{i});
      if (constrained && !inst.domain->contains(p)) {
        is_blocked[static_cast<std::size_t>(i)] = 1;
      } else if (inst.target.contains(p)) {
        is_target[static_cast<std::size_t>(i)] = 1;
        ++n_targets;
      }
    }
    if (n_targets == 0) {
      throw ConfigError(constrained ? "target does not intersect grid within the domain"
                                    : "target does not intersect the grid");
    }
    offsets = stencil_offsets(grid.dim());
  }

  bool updatable(std::int64_t i) const {
    return is_target[static_cast<std::size_t>(i)] == 0 &&
           is_blocked[static_cast<std::size_t>(i)] == 0;
  }
};

struct HeapEntry {
  double key;
  std::int64_t node;
  friend bool operator>(const HeapEntry& a, const HeapEntry& b) {
    if (a.key != b.key) return a.key > b.key;
    return a.node > b.node;  // deterministic tie-break
  }
};

using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>>;

}  // namespace

Grid solver_grid(const BenchmarkInstance& inst, double h) {
  return Grid::from_box(inst.dim, h, inst.box_lower, inst.box_upper);
}

void validate_step(const SpeedField& speed, double h) {
  const double bound = std::min(1.0 / speed.f_max, speed.f_min);
  if (!(h > 0.0) || !(h < bound)) {
    throw ConfigError("mesh step h=" + std::to_string(h) +
                      " violates 0 < h < min(1/f_max, f_min) = " + std::to_string(bound));
  }
}

std::vector<double> apply_full_update(const Grid& g, const SpeedField& speed,
                                      const TargetSet& target, double h,
                                      const MinimizerConfig& cfg, std::span<const double> in,
                                      UpdateStats* stats) {
  std::vector<double> out(in.size());
  for (std::int64_t i = 0; i < g.size(); ++i) {
    out[static_cast<std::size_t>(i)] =
        update_node(g, in, NodeId{i}, speed, target, h, cfg, 1.0, stats).value;
  }
  return out;
}

SolveResult fast_march(const BenchmarkInstance& inst, const SolverConfig& cfg,
                       std::vector<double>* accept_trace) {
  const auto t0 = Clock::now();
  GridProblem gp(inst, cfg);
  const Grid& g = gp.grid;

  ValueField field(g);
  SolveReport report;
  UpdateStats stats;
  MinHeap heap;

  auto try_improve = [&](std::int64_t y) {
    if (!gp.updatable(y) || field.labels[static_cast<std::size_t>(y)] == Label::Accepted) return;
    const UpdateOutcome out =
        update_node(g, field.values, NodeId{y}, inst.speed, inst.target, cfg.h, cfg.minimizer,
                    1.0, &stats);
    if (out.value < field.values[static_cast<std::size_t>(y)]) {
      field.values[static_cast<std::size_t>(y)] = out.value;
      field.labels[static_cast<std::size_t>(y)] = Label::Narrow;
      heap.push({out.value, y});
      ++report.heap_ops;
    }
  };

  auto visit_dependents = [&](std::int64_t x) {
    const MultiIndex m = g.to_multi(NodeId{x});
    for (const MultiIndex& off : gp.offsets) {
      MultiIndex t = m;
      for (int l = 0; l < g.dim(); ++l) t[l] += off[l];
      if (g.in_range(t)) try_improve(g.to_node(t).flat);
    }
  };

  // Target nodes are accepted at 0; their stencil dependents seed Narrow.
  for (std::int64_t i = 0; i < g.size(); ++i) {
    if (gp.is_target[static_cast<std::size_t>(i)]) {
      field.values[static_cast<std::size_t>(i)] = 0.0;
      field.labels[static_cast<std::size_t>(i)] = Label::Accepted;
      ++report.iterations_or_pops;
      if (accept_trace != nullptr) accept_trace->push_back(0.0);
    }
  }
  for (std::int64_t i = 0; i < g.size(); ++i) {
    if (gp.is_target[static_cast<std::size_t>(i)]) visit_dependents(i);
  }

  while (!heap.empty()) {
    const HeapEntry top = heap.top();
    heap.pop();
    ++report.heap_ops;
    const std::size_t ix = static_cast<std::size_t>(top.node);
    if (field.labels[ix] != Label::Narrow || field.values[ix] != top.key) continue;  // stale
    field.labels[ix] = Label::Accepted;
    ++report.iterations_or_pops;
    if (accept_trace != nullptr) accept_trace->push_back(top.key);
    visit_dependents(top.node);
  }

  report.objective_evals = stats.objective_evals;
  report.wall_time_s = seconds_since(t0);
  return {std::move(field), report};
}

SolveResult value_iterate(const BenchmarkInstance& inst, const SolverConfig& cfg) {
  const auto t0 = Clock::now();
  GridProblem gp(inst, cfg);
  const Grid& g = gp.grid;

  ValueField field(g);
  SolveReport report;
  UpdateStats stats;

  for (std::int64_t i = 0; i < g.size(); ++i) {
    if (gp.is_target[static_cast<std::size_t>(i)]) {
      field.values[static_cast<std::size_t>(i)] = 0.0;
    }
  }

  report.converged = false;
  // Sweep orderings cycle through all 2^d sign patterns (bit l set = axis l
  // descending); with only forward/reverse row-major, characteristics mixing
  // ascending and descending axes advance one row per sweep.
  const int n_orderings = 1 << g.dim();
  for (long long sweep = 0; sweep < cfg.vi_max_iters; ++sweep) {
    double change = 0.0;
    const int ordering = static_cast<int>(sweep % n_orderings);
    for (std::int64_t k = 0; k < g.size(); ++k) {
      MultiIndex m = g.to_multi(NodeId{k});
      for (int l = 0; l < g.dim(); ++l) {
        if ((ordering >> l) & 1) m[l] = g.count(l) - 1 - m[l];
      }
      const std::int64_t i = g.to_node(m).flat;
      if (!gp.updatable(i)) continue;
      const double before = field.values[static_cast<std::size_t>(i)];
      const double after =
          update_node(g, field.values, NodeId{i}, inst.speed, inst.target, cfg.h, cfg.minimizer,
                      1.0, &stats)
              .value;
      field.values[static_cast<std::size_t>(i)] = after;
      change = std::max(change, std::abs(before - after));
    }
    ++report.iterations_or_pops;
    report.residual = change;
    if (change <= cfg.vi_tolerance) {
      report.converged = true;
      break;
    }
  }

  for (std::int64_t i = 0; i < g.size(); ++i) {
    const std::size_t ix = static_cast<std::size_t>(i);
    if (gp.is_target[ix] || field.values[ix] < 1.0) field.labels[ix] = Label::Accepted;
  }

  report.objective_evals = stats.objective_evals;
  report.wall_time_s = seconds_since(t0);
  return {std::move(field), report};
}

SolveResult fast_march_constrained(const BenchmarkInstance& inst, SolverConfig cfg,
                                   std::vector<double>* accept_trace) {
  cfg.mode = SolverConfig::Mode::Constrained;
  return fast_march(inst, cfg, accept_trace);
}

SolveResult value_iterate_constrained(const BenchmarkInstance& inst, SolverConfig cfg) {
  cfg.mode = SolverConfig::Mode::Constrained;
  return value_iterate(inst, cfg);
}

}  // namespace eik
