#include "eik/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

namespace eik {

std::pair<double, double> fit_power_law(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size() || h.size() < 2) {
    throw ConfigError("fit_power_law: need matching lists with at least 2 points");
  }
  const int n = static_cast<int>(h.size());
  double sx = 0, sy = 0;
  std::vector<double> lx(h.size()), ly(h.size());
  for (int i = 0; i < n; ++i) {
    if (!(h[i] > 0)) throw ConfigError("fit_power_law: h values must be positive");
    lx[i] = std::log(h[i]);
    ly[i] = std::log(std::max(err[i], 1e-300));
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const double order = sxy / sxx;
  const double constant = std::exp(my - order * mx);
  return {order, constant};
}

double interior_sup_error(const ValueField& V, const BenchmarkInstance& inst, double margin) {
  if (!inst.analytic_value) {
    throw ConfigError("interior_sup_error: instance '" + inst.name + "' has no analytic solution");
  }
  const Grid& g = V.grid;
  if (!(margin >= 2.0 * g.mesh())) throw ConfigError("interior_sup_error: margin must be >= 2h");

  double sup = 0.0;
  long long used = 0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const Vec p = g.node_coord(NodeId{i});
    double boundary_dist = std::numeric_limits<double>::infinity();
    for (int a = 0; a < g.dim(); ++a) {
      const double hi = g.lower()[a] + static_cast<double>(g.count(a) - 1) * g.mesh();
      boundary_dist = std::min({boundary_dist, p[a] - g.lower()[a], hi - p[a]});
    }
    if (boundary_dist < margin) continue;
    if (inst.target.contains(p)) continue;
    sup = std::max(sup, std::abs(V.values[static_cast<std::size_t>(i)] - inst.analytic_value(p)));
    ++used;
  }
  if (used == 0) throw ConfigError("interior_sup_error: margin leaves no interior nodes");
  return sup;
}

ConvergenceRecord convergence_sweep(const BenchmarkInstance& inst, std::span<const double> h_list,
                                    double margin, const SolverConfig& base_cfg) {
  if (h_list.size() < 3) throw ConfigError("convergence sweep needs at least 3 h values");
  for (std::size_t i = 0; i + 1 < h_list.size(); ++i) {
    if (!(h_list[i] > h_list[i + 1])) {
      throw ConfigError("convergence sweep h values must be strictly decreasing");
    }
  }
  for (double h : h_list) validate_step(inst.speed, h);

  std::vector<std::future<double>> errors;
  errors.reserve(h_list.size());
  for (double h : h_list) {
    errors.push_back(std::async(std::launch::async, [&, h]() {
      SolverConfig cfg = base_cfg;
      cfg.h = h;
      const SolveResult r = fast_march(inst, cfg);
      return interior_sup_error(r.field, inst, margin);
    }));
  }

  ConvergenceRecord rec;
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    try {
      rec.sup_errors.push_back(errors[i].get());
    } catch (const std::exception& e) {
      throw std::runtime_error("convergence sweep failed at h=" + std::to_string(h_list[i]) +
                               ": " + e.what());
    }
    rec.h_values.push_back(h_list[i]);
  }
  std::tie(rec.fitted_order, rec.fitted_constant) = fit_power_law(rec.h_values, rec.sup_errors);
  return rec;
}

SemiconcavityProbe semiconcavity_probe(const ValueField& V, const TargetSet& target,
                                       std::span<const int> z_steps, ProbeScale scale) {
  const Grid& g = V.grid;
  const std::size_t m = static_cast<std::size_t>(g.size());

  std::vector<std::uint8_t> in_target(m);
  std::vector<double> vals(m);
  for (std::int64_t i = 0; i < g.size(); ++i) {
    in_target[static_cast<std::size_t>(i)] = target.contains(g.node_coord(NodeId{i})) ? 1 : 0;
    const double v = V.values[static_cast<std::size_t>(i)];
    vals[static_cast<std::size_t>(i)] =
        scale == ProbeScale::Kruzkov ? v : (v >= 1.0 ? kInfiniteTime : kruzkov_inverse(v));
  }

  SemiconcavityProbe probe;
  for (int steps : z_steps) {
    if (steps < 1) throw ConfigError("semiconcavity probe: z steps must be positive");
    const double znorm = static_cast<double>(steps) * g.mesh();
    double worst = -std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < g.dim(); ++axis) {
      for (std::int64_t i = 0; i < g.size(); ++i) {
        MultiIndex mi = g.to_multi(NodeId{i});
        MultiIndex plus = mi;
        MultiIndex minus = mi;
        plus[axis] += steps;
        minus[axis] -= steps;
        if (!g.in_range(plus) || !g.in_range(minus)) continue;
        const std::size_t ip = static_cast<std::size_t>(g.to_node(plus).flat);
        const std::size_t im = static_cast<std::size_t>(g.to_node(minus).flat);
        const std::size_t ix = static_cast<std::size_t>(i);
        if (in_target[ix] || in_target[ip] || in_target[im]) continue;
        if (!std::isfinite(vals[ip]) || !std::isfinite(vals[im]) || !std::isfinite(vals[ix])) {
          continue;
        }
        const double ratio = (vals[ip] - 2.0 * vals[ix] + vals[im]) / (znorm * znorm);
        worst = std::max(worst, ratio);
      }
    }
    probe.z_magnitudes.push_back(znorm);
    probe.max_ratio.push_back(worst);
  }
  return probe;
}

BruteForceValue brute_force_discrete_value(const BenchmarkInstance& inst, double h, NodeId x0,
                                           int max_steps) {
  validate_step(inst.speed, h);
  const Grid g = solver_grid(inst, h);
  if (g.size() > 10000 || max_steps > 60) {
    throw ConfigError("brute_force_discrete_value: oracle budget exceeded (M <= 1e4, steps <= 60)");
  }
  if (x0.flat < 0 || x0.flat >= g.size()) throw ConfigError("brute force: x0 outside the grid");

  const std::size_t m = static_cast<std::size_t>(g.size());
  std::vector<std::uint8_t> in_target(m);
  // Cost factor of each axis move, precomputed: move_cost[i][2l+s].
  std::vector<std::array<double, 2 * kMaxDim>> discount(m);
  std::vector<std::array<std::int64_t, 2 * kMaxDim>> next(m);
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const std::size_t ix = static_cast<std::size_t>(i);
    const Vec p = g.node_coord(NodeId{i});
    in_target[ix] = inst.target.contains(p) ? 1 : 0;
    const MultiIndex mi = g.to_multi(NodeId{i});
    for (int l = 0; l < g.dim(); ++l) {
      for (int s = 0; s < 2; ++s) {
        MultiIndex t = mi;
        t[l] += s == 0 ? +1 : -1;
        const int slot = 2 * l + s;
        if (!g.in_range(t)) {
          next[ix][slot] = -1;
          continue;
        }
        next[ix][slot] = g.to_node(t).flat;
        Vec alpha = Vec::zero(g.dim());
        alpha[l] = s == 0 ? 1.0 : -1.0;
        discount[ix][slot] = 1.0 - h / inst.speed(p, alpha);
      }
    }
  }

  std::vector<double> v(m, 1.0);
  for (std::int64_t i = 0; i < g.size(); ++i) {
    if (in_target[static_cast<std::size_t>(i)]) v[static_cast<std::size_t>(i)] = 0.0;
  }
  std::vector<double> w(v);
  for (int n = 0; n < max_steps; ++n) {
    bool changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (in_target[i]) continue;
      double best = v[i];
      for (int slot = 0; slot < 2 * g.dim(); ++slot) {
        const std::int64_t j = next[i][slot];
        if (j < 0) continue;
        const double c = discount[i][slot];
        best = std::min(best, (1.0 - c) + c * v[static_cast<std::size_t>(j)]);
      }
      w[i] = best;
      changed = changed || best != v[i];
    }
    std::swap(v, w);
    if (!changed) break;
  }

  BruteForceValue out;
  out.value = v[static_cast<std::size_t>(x0.flat)];
  out.truncated = out.value >= 1.0;
  return out;
}

std::vector<ComplexityPoint> complexity_scaling(const BenchmarkInstance& inst,
                                                std::span<const long long> per_axis_sizes,
                                                const MinimizerConfig& minimizer) {
  if (per_axis_sizes.size() < 3) throw ConfigError("complexity scaling needs >= 3 grid sizes");
  std::vector<std::future<ComplexityPoint>> runs;
  for (long long n : per_axis_sizes) {
    if (n < 2) throw ConfigError("complexity scaling: per-axis size must be >= 2");
    runs.push_back(std::async(std::launch::async, [&, n]() {
      const double extent = inst.box_upper[0] - inst.box_lower[0];
      SolverConfig cfg;
      cfg.h = extent / static_cast<double>(n - 1);
      cfg.minimizer = minimizer;
      const SolveResult r = fast_march(inst, cfg);
      ComplexityPoint pt;
      pt.per_axis = n;
      pt.m_nodes = r.field.grid.size();
      pt.pops = r.report.iterations_or_pops;
      pt.heap_ops = r.report.heap_ops;
      pt.wall_time_s = r.report.wall_time_s;
      for (double v : r.field.values) {
        if (v < 1.0) ++pt.reachable;
      }
      return pt;
    }));
  }
  std::vector<ComplexityPoint> points;
  for (auto& f : runs) points.push_back(f.get());
  return points;
}

bool complexity_trend_ok(std::span<const ComplexityPoint> points, double slack) {
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double m1 = static_cast<double>(points[i].m_nodes);
    const double m2 = static_cast<double>(points[i + 1].m_nodes);
    const double predicted = (m2 * std::log(m2)) / (m1 * std::log(m1));
    const double measured =
        static_cast<double>(points[i + 1].heap_ops) / static_cast<double>(points[i].heap_ops);
    if (measured > slack * predicted) return false;
  }
  return true;
}

NodeId node_at(const Grid& g, const Vec& p) {
  MultiIndex m{};
  for (int a = 0; a < g.dim(); ++a) {
    const double pos = (p[a] - g.lower()[a]) / g.mesh();
    const auto idx = static_cast<std::int64_t>(std::llround(pos));
    if (std::abs(pos - static_cast<double>(idx)) > 1e-9) {
      throw ConfigError("node_at: coordinates are not on the grid");
    }
    m[a] = idx;
  }
  if (!g.in_range(m)) throw ConfigError("node_at: coordinates outside the grid");
  return g.to_node(m);
}

}  // namespace eik
