#include "eik/problem.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "eik/rng.hpp"

namespace eik {

double kruzkov(double t) {
  if (std::isnan(t) || t < 0) throw std::domain_error("kruzkov: time must be nonnegative");
  if (std::isinf(t)) return 1.0;
  return -std::expm1(-t);
}

double kruzkov_inverse(double v) {
  if (std::isnan(v) || v < 0) throw std::domain_error("kruzkov_inverse: value must be in [0,1]");
  if (v >= 1.0) return kInfiniteTime;
  return -std::log1p(-v);
}

SpeedField SpeedField::isotropic_constant(double c) {
  if (!(c > 0)) throw ConfigError("speed must be positive");
  SpeedField s;
  s.eval = [c](const Vec&, const Vec&) { return c; };
  s.f_min = c;
  s.f_max = c;
  s.kind = Kind::Isotropic;
  return s;
}

SpeedField SpeedField::isotropic(std::function<double(const Vec&)> f, double fmin, double fmax) {
  if (!(0 < fmin && fmin <= fmax)) throw ConfigError("speed bounds must satisfy 0 < f_min <= f_max");
  SpeedField s;
  s.eval = [fn = std::move(f)](const Vec& x, const Vec&) { return fn(x); };
  s.f_min = fmin;
  s.f_max = fmax;
  s.kind = Kind::Isotropic;
  return s;
}

SpeedField SpeedField::anisotropic(std::function<double(const Vec&, const Vec&)> f, double fmin,
                                   double fmax) {
  if (!(0 < fmin && fmin <= fmax)) throw ConfigError("speed bounds must satisfy 0 < f_min <= f_max");
  SpeedField s;
  s.eval = std::move(f);
  s.f_min = fmin;
  s.f_max = fmax;
  s.kind = Kind::Anisotropic;
  return s;
}

namespace {

// Euclidean distance from p to the boundary of the axis-aligned box
// [lo, hi] (distance to the box for outside points, distance to the nearest
// face for inside points).
double rect_boundary_distance(const Vec& p, const Vec& lo, const Vec& hi) {
  double outside2 = 0.0;
  double inside = std::numeric_limits<double>::infinity();
  bool is_inside = true;
  for (int i = 0; i < p.dim; ++i) {
    if (p[i] < lo[i]) {
      outside2 += (lo[i] - p[i]) * (lo[i] - p[i]);
      is_inside = false;
    } else if (p[i] > hi[i]) {
      outside2 += (p[i] - hi[i]) * (p[i] - hi[i]);
      is_inside = false;
    } else {
      inside = std::min(inside, std::min(p[i] - lo[i], hi[i] - p[i]));
    }
  }
  return is_inside ? inside : std::sqrt(outside2);
}

BenchmarkInstance make_unit_disk() {
  BenchmarkInstance b;
  b.name = "unit-disk";
  b.dim = 2;
  b.speed = SpeedField::isotropic_constant(1.0);
  const double r0 = 0.25;
  b.target.contains = [r0](const Vec& x) { return norm(x) <= r0; };
  b.target.distance = [r0](const Vec& x) { return std::max(norm(x) - r0, 0.0); };
  b.analytic_T = [r0](const Vec& x) { return std::max(norm(x) - r0, 0.0); };
  b.analytic_value = [r0](const Vec& x) { return kruzkov(std::max(norm(x) - r0, 0.0)); };
  b.box_lower = Vec{-1.0, -1.0};
  b.box_upper = Vec{1.0, 1.0};
  b.probe_points = {Vec{0.75, 0.0},  Vec{0.0, 0.75},  Vec{-0.75, 0.0}, Vec{0.0, -0.75},
                    Vec{0.5, 0.5},   Vec{-0.5, 0.5},  Vec{0.5, -0.5},  Vec{-0.5, -0.5},
                    Vec{0.35, 0.0},  Vec{0.0, 0.9}};
  return b;
}

BenchmarkInstance make_halfline_1d() {
  BenchmarkInstance b;
  b.name = "halfline-1d";
  b.dim = 1;
  b.speed = SpeedField::isotropic_constant(1.0);
  b.target.contains = [](const Vec& x) { return x[0] <= 0.0; };
  b.target.distance = [](const Vec& x) { return std::max(x[0], 0.0); };
  b.analytic_T = [](const Vec& x) { return std::max(x[0], 0.0); };
  b.analytic_value = [](const Vec& x) { return kruzkov(std::max(x[0], 0.0)); };
  b.box_lower = Vec{0.0};
  b.box_upper = Vec{1.1};
  b.probe_points = {Vec{0.2}, Vec{0.5}, Vec{1.0}};
  return b;
}

BenchmarkInstance make_smooth_speed_1d() {
  BenchmarkInstance b;
  b.name = "smooth-speed-1d";
  b.dim = 1;
  b.speed = SpeedField::isotropic([](const Vec& x) { return 2.0 + std::cos(x[0]); }, 1.0, 3.0);
  b.target.contains = [](const Vec& x) { return x[0] <= 0.0; };
  b.target.distance = [](const Vec& x) { return std::max(x[0], 0.0); };

  // T(x) = integral of 1/f from 0 to x, via adaptive Gauss-Kronrod to 1e-12
  // and memoized per abscissa (the harness queries the same grid nodes many
  // times, possibly from several sweep threads).
  auto cache = std::make_shared<std::map<double, double>>();
  auto lock = std::make_shared<std::mutex>();
  auto travel_time = [cache, lock](const Vec& p) {
    const double x = p[0];
    if (x <= 0.0) return 0.0;
    {
      std::scoped_lock g(*lock);
      auto it = cache->find(x);
      if (it != cache->end()) return it->second;
    }
    const double t = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [](double s) { return 1.0 / (2.0 + std::cos(s)); }, 0.0, x, 12, 1e-12);
    std::scoped_lock g(*lock);
    cache->emplace(x, t);
    return t;
  };
  b.analytic_T = travel_time;
  b.analytic_value = [travel_time](const Vec& x) { return kruzkov(travel_time(x)); };
  b.box_lower = Vec{0.0};
  b.box_upper = Vec{1.1};
  b.probe_points = {Vec{0.5}, Vec{1.0}};
  return b;
}

BenchmarkInstance make_disk_with_slab_obstacle() {
  BenchmarkInstance b = make_unit_disk();
  b.name = "disk-with-slab-obstacle";

  // Excluded slab: a full-height wall to the right of the target, so nodes
  // with x > 0.8 are cut off from K inside the computational box. Probes all
  // sit at x <= 0.5; their straight-line geodesics to the disk never meet
  // the wall.
  const Vec slab_lo{0.6, -1.25};
  const Vec slab_hi{0.8, 1.25};
  ConstraintDomain dom;
  dom.contains = [slab_lo, slab_hi](const Vec& p) {
    bool in_slab = true;
    for (int i = 0; i < p.dim; ++i) in_slab = in_slab && p[i] >= slab_lo[i] && p[i] <= slab_hi[i];
    return !in_slab;
  };
  dom.boundary_distance = [slab_lo, slab_hi](const Vec& p) {
    return rect_boundary_distance(p, slab_lo, slab_hi);
  };
  b.domain = dom;
  b.analytic_T = nullptr;
  b.analytic_value = nullptr;
  b.probe_points = {Vec{-0.75, 0.0}, Vec{0.0, 0.75},  Vec{0.0, -0.75}, Vec{0.5, 0.5},
                    Vec{-0.5, 0.5},  Vec{0.5, -0.5},  Vec{-0.5, -0.5}, Vec{0.45, 0.0},
                    Vec{0.0, 0.45},  Vec{-0.45, -0.45}};
  return b;
}

}  // namespace

std::vector<std::string> benchmark_names() {
  return {"unit-disk", "halfline-1d", "smooth-speed-1d", "disk-with-slab-obstacle"};
}

BenchmarkInstance benchmark(const std::string& name) {
  if (name == "unit-disk") return make_unit_disk();
  if (name == "halfline-1d") return make_halfline_1d();
  if (name == "smooth-speed-1d") return make_smooth_speed_1d();
  if (name == "disk-with-slab-obstacle") return make_disk_with_slab_obstacle();
  std::string known;
  for (const auto& n : benchmark_names()) known += " " + n;
  throw ConfigError("unknown benchmark '" + name + "'; registry:" + known);
}

bool spot_check_speed_bounds(const BenchmarkInstance& inst, int n, std::uint64_t seed) {
  Rng rng(seed);
  for (int k = 0; k < n; ++k) {
    Vec x = Vec::zero(inst.dim);
    for (int i = 0; i < inst.dim; ++i) x[i] = rng.uniform(inst.box_lower[i], inst.box_upper[i]);
    Vec a = Vec::zero(inst.dim);
    double nrm = 0;
    do {
      for (int i = 0; i < inst.dim; ++i) a[i] = rng.gaussian();
      nrm = norm(a);
    } while (nrm < 1e-12);
    for (int i = 0; i < inst.dim; ++i) a[i] /= nrm;
    const double f = inst.speed(x, a);
    if (!(inst.speed.f_min <= f && f <= inst.speed.f_max)) return false;
  }
  return true;
}

}  // namespace eik
