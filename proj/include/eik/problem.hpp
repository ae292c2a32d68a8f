#ifndef EIK_PROBLEM_HPP
#define EIK_PROBLEM_HPP

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "eik/grid.hpp"

namespace eik {

/// Travel time of an unreachable state.
inline constexpr double kInfiniteTime = std::numeric_limits<double>::infinity();

/// v = 1 - e^{-T}. Maps minimal time to a bounded value in [0,1); unreachable
/// (T = +inf) maps to exactly 1.
double kruzkov(double t);

/// T = -log(1 - v), inverse of kruzkov. v >= 1 returns +inf.
double kruzkov_inverse(double v);

/// Speed f(x, alpha) with certified bounds 0 < f_min <= f <= f_max.
struct SpeedField {
  enum class Kind { Isotropic, Anisotropic };

  std::function<double(const Vec& x, const Vec& alpha)> eval;
  double f_min = 0;
  double f_max = 0;
  Kind kind = Kind::Isotropic;

  double operator()(const Vec& x, const Vec& alpha) const { return eval(x, alpha); }

  static SpeedField isotropic_constant(double c);
  static SpeedField isotropic(std::function<double(const Vec&)> f, double fmin, double fmax);
  static SpeedField anisotropic(std::function<double(const Vec&, const Vec&)> f, double fmin,
                                double fmax);
};

/// Target set K: membership plus the exact Euclidean distance d_K.
struct TargetSet {
  std::function<bool(const Vec&)> contains;
  std::function<double(const Vec&)> distance;
};

/// Allowed domain O for state-constrained runs: membership in the closure
/// plus the distance to the boundary of O.
struct ConstraintDomain {
  std::function<bool(const Vec&)> contains;
  std::function<double(const Vec&)> boundary_distance;
};

/// A named problem with everything a solver and the error harness need.
/// analytic_value/analytic_T, when present, are exact solutions on the
/// Kruzkov and time scales; they satisfy value = 1 - e^{-T}.
struct BenchmarkInstance {
  std::string name;
  int dim = 0;
  SpeedField speed;
  TargetSet target;
  std::optional<ConstraintDomain> domain;
  std::function<double(const Vec&)> analytic_value;  // may be empty
  std::function<double(const Vec&)> analytic_T;      // may be empty
  Vec box_lower;  // default computational box
  Vec box_upper;
  std::vector<Vec> probe_points;  // documented probes (constrained checks, MDP)
};

/// Look up a registered benchmark by name. Throws ConfigError for unknown
/// names, listing the registry.
BenchmarkInstance benchmark(const std::string& name);

/// Names in the registry, in a fixed order.
std::vector<std::string> benchmark_names();

/// Randomized bound check: samples n (x, alpha) pairs in the instance box and
/// verifies f_min <= f(x,alpha) <= f_max. Returns false on first violation.
bool spot_check_speed_bounds(const BenchmarkInstance& inst, int n, std::uint64_t seed);

}  // namespace eik

#endif  // EIK_PROBLEM_HPP
