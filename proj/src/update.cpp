#include "eik/update.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "eik/minimize.hpp"

namespace eik {

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Objective for one (node, orthant): discounted interpolated value as a
// function of the angle vector. Tracks the best evaluation ever made so any
// search strategy can read off the argmin afterwards.
struct OrthantObjective {
  const SpeedField* speed = nullptr;
  Vec x;
  const int* signs = nullptr;
  int dim = 0;
  double h = 0;
  std::array<double, kMaxDim + 1> stencil_values{};
  double value_lo = 0.0;
  double value_hi = 1.0;
  UpdateStats* stats = nullptr;

  double best_value = kInf;
  std::array<double, kMaxDim> best_angles{};

  double eval(const double* angles) {
    if (stats != nullptr) ++stats->objective_evals;
    std::array<double, kMaxDim> mag{};
    detail::alpha_from_angles(angles, dim, mag.data());
    std::array<double, kMaxDim + 1> w{};
    double value;
    if (!detail::simplex_weights(mag.data(), dim, w.data())) {
      value = kInf;  // direction leaves the stencil simplex; rejected
    } else {
      double interp = 0.0;
      for (int k = 0; k <= dim; ++k) interp += w[k] * stencil_values[k];
      // A convex combination lies in the stencil hull; the raw sum can drift
      // out by an ulp, which would break the exact fixed point at the
      // unreachable sentinel.
      interp = std::clamp(interp, value_lo, value_hi);
      if (interp >= 1.0) {
        value = 1.0;  // (1 - c) * 1 + c is identically 1
      } else {
        Vec alpha = Vec::zero(dim);
        for (int l = 0; l < dim; ++l) alpha[l] = mag[l] * signs[l];
        const double c = h / speed->eval(x, alpha);
        value = (1.0 - c) * interp + c;
      }
    }
    if (value < best_value) {
      best_value = value;
      for (int k = 0; k + 1 < dim; ++k) best_angles[k] = angles[k];
    }
    return value;
  }
};

// One golden-section search per angle, innermost angle first. In d >= 3 the
// profiles are kinked by rejected directions, so every scan basin is
// refined, not only the best one.
double nested_min(OrthantObjective& obj, std::array<double, kMaxDim>& angles, int k,
                  const MinimizerConfig& cfg) {
  const int n_angles = obj.dim - 1;
  if (k == n_angles) return obj.eval(angles.data());
  auto slice = [&](double t) {
    angles[k] = t;
    return nested_min(obj, angles, k + 1, cfg);
  };
  if (obj.dim >= 3) {
    return minimize_scan_golden_all(slice, 0.0, kHalfPi, cfg.samples_per_angle,
                                    cfg.refine_tolerance)
        .value;
  }
  return minimize_scan_golden(slice, 0.0, kHalfPi, cfg.samples_per_angle, cfg.refine_tolerance)
      .value;
}

// Tensor scan of the angle box. Starts are the best multistart_count
// first-angle columns ranked by their column minimum over the scan (a raw
// grid-point ranking can miss basins hidden behind rejected directions);
// each start is refined by golden section over the first angle inside its
// scan cell, with the remaining angles minimized in full per candidate.
void multistart_min(OrthantObjective& obj, const MinimizerConfig& cfg) {
  const int n_angles = obj.dim - 1;
  const int n = cfg.samples_per_angle;
  const double step = kHalfPi / static_cast<double>(n - 1);

  std::vector<std::pair<double, std::array<double, kMaxDim>>> columns(
      static_cast<std::size_t>(n),
      {std::numeric_limits<double>::infinity(), std::array<double, kMaxDim>{}});
  std::array<int, kMaxDim> idx{};
  for (;;) {
    std::array<double, kMaxDim> angles{};
    for (int k = 0; k < n_angles; ++k) angles[k] = std::min(idx[k] * step, kHalfPi);
    const double v = obj.eval(angles.data());
    auto& col = columns[static_cast<std::size_t>(idx[0])];
    if (v < col.first) col = {v, angles};
    int k = 0;
    while (k < n_angles && ++idx[k] == n) idx[k++] = 0;
    if (k == n_angles) break;
  }

  const int starts = std::min<int>(cfg.multistart_count, n);
  std::partial_sort(columns.begin(), columns.begin() + starts, columns.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });

  for (int s = 0; s < starts; ++s) {
    if (!std::isfinite(columns[static_cast<std::size_t>(s)].first)) continue;
    std::array<double, kMaxDim> angles = columns[static_cast<std::size_t>(s)].second;
    const double center = angles[0];
    auto outer = [&](double t) {
      angles[0] = t;
      return nested_min(obj, angles, 1, cfg);
    };
    minimize_scan_golden_all(outer, std::max(0.0, center - step),
                             std::min(kHalfPi, center + step), 9, cfg.refine_tolerance);
  }
}

}  // namespace

void validate_minimizer(const MinimizerConfig& cfg) {
  if (cfg.samples_per_angle < 8) throw ConfigError("samples_per_angle must be at least 8");
  if (!(cfg.refine_tolerance > 0)) throw ConfigError("refine_tolerance must be positive");
  if (cfg.multistart_count < 1) throw ConfigError("multistart_count must be at least 1");
}

std::pair<double, Direction> orthant_value(const Grid& g, std::span<const double> values, NodeId x,
                                           const Orthant& o, const SpeedField& speed, double h,
                                           const MinimizerConfig& cfg, double outside_value,
                                           UpdateStats* stats) {
  const int dim = g.dim();
  const StencilNodes stencil = g.stencil_nodes(x, o);

  OrthantObjective obj;
  obj.speed = &speed;
  obj.x = g.node_coord(x);
  obj.signs = o.signs.data();
  obj.dim = dim;
  obj.h = h;
  obj.stats = stats;
  obj.value_lo = kInf;
  obj.value_hi = -kInf;
  for (int k = 0; k <= dim; ++k) {
    obj.stencil_values[k] = stencil.inside[k]
                                ? values[static_cast<std::size_t>(stencil.nodes[k].flat)]
                                : outside_value;
    obj.value_lo = std::min(obj.value_lo, obj.stencil_values[k]);
    obj.value_hi = std::max(obj.value_hi, obj.stencil_values[k]);
  }

  if (dim == 1) {
    std::array<double, kMaxDim> none{};
    obj.eval(none.data());
  } else if (dim == 2 && cfg.method == MinimizerConfig::Method::MultistartSampled) {
    // One angle: the tensor grid degenerates to the scan, and "refine the
    // best starts" becomes refining every scan basin. Useful for anisotropic
    // speeds with multimodal angle profiles.
    std::array<double, kMaxDim> angles{};
    auto slice = [&](double t) {
      angles[0] = t;
      return obj.eval(angles.data());
    };
    minimize_scan_golden_all(slice, 0.0, kHalfPi, cfg.samples_per_angle, cfg.refine_tolerance);
  } else if (dim == 2 || cfg.method == MinimizerConfig::Method::Nested1d) {
    std::array<double, kMaxDim> angles{};
    nested_min(obj, angles, 0, cfg);
  } else {
    multistart_min(obj, cfg);
  }

  double value = obj.best_value;
  std::array<double, kMaxDim> best = obj.best_angles;
  if (!std::isfinite(value)) {
    value = 1.0;  // no feasible direction in this orthant
    best.fill(0.0);
  }
  value = std::min(value, 1.0);
  const Direction dir =
      direction_from_angles({best.data(), static_cast<std::size_t>(dim - 1)}, o);
  return {value, dir};
}

UpdateOutcome update_node(const Grid& g, std::span<const double> values, NodeId x,
                          const SpeedField& speed, const TargetSet& target, double h,
                          const MinimizerConfig& cfg, double outside_value, UpdateStats* stats) {
  UpdateOutcome out;
  out.n_orthants = 1 << g.dim();
  if (target.contains(g.node_coord(x))) {
    out.value = 0.0;
    return out;
  }
  out.value = kInf;
  for (int code = 0; code < out.n_orthants; ++code) {
    const Orthant o = orthant_from_code(g.dim(), code);
    auto [v, dir] = orthant_value(g, values, x, o, speed, h, cfg, outside_value, stats);
    out.orthant_values[static_cast<std::size_t>(code)] = v;
    if (v < out.value) {
      out.value = v;
      out.best_direction = dir;
    }
  }
  return out;
}

}  // namespace eik
