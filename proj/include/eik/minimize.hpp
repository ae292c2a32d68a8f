#ifndef EIK_MINIMIZE_HPP
#define EIK_MINIMIZE_HPP

#include <cmath>
#include <utility>
#include <vector>

namespace eik {

struct MinimizeResult {
  double arg = 0;
  double value = 0;
};

/// 1-D minimization on [lo, hi]: a coarse scan of n_samples points (both
/// endpoints included) brackets the best sample, then golden-section search
/// refines inside the bracket down to an interval of width tol. The best
/// point ever evaluated wins, so the result is never worse than the scan.
/// The objective may return +inf (rejected arguments).
template <class F>
MinimizeResult minimize_scan_golden(F&& f, double lo, double hi, int n_samples, double tol) {
  if (n_samples < 2) n_samples = 2;
  const double step = (hi - lo) / static_cast<double>(n_samples - 1);

  MinimizeResult best{lo, f(lo)};
  int best_i = 0;
  for (int i = 1; i < n_samples; ++i) {
    const double x = (i == n_samples - 1) ? hi : lo + step * i;
    const double v = f(x);
    if (v < best.value) {
      best = {x, v};
      best_i = i;
    }
  }

  double a = (best_i > 0) ? lo + step * (best_i - 1) : lo;
  double b = (best_i < n_samples - 1) ? lo + step * (best_i + 1) : hi;

  constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5)-1)/2
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  if (f1 < best.value) best = {x1, f1};
  if (f2 < best.value) best = {x2, f2};
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
      if (f1 < best.value) best = {x1, f1};
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
      if (f2 < best.value) best = {x2, f2};
    }
  }
  return best;
}

/// Like minimize_scan_golden, but refines every bracket around a scan local
/// minimum (and the endpoints when the scan decreases into them) instead of
/// only the best one. Costs more evaluations; meant for objectives with
/// several competing basins, e.g. angle profiles kinked by rejected
/// directions.
template <class F>
MinimizeResult minimize_scan_golden_all(F&& f, double lo, double hi, int n_samples, double tol) {
  if (n_samples < 3) n_samples = 3;
  const double step = (hi - lo) / static_cast<double>(n_samples - 1);

  std::vector<double> vals(static_cast<std::size_t>(n_samples));
  MinimizeResult best{lo, f(lo)};
  vals[0] = best.value;
  for (int i = 1; i < n_samples; ++i) {
    const double x = (i == n_samples - 1) ? hi : lo + step * i;
    const double v = f(x);
    vals[static_cast<std::size_t>(i)] = v;
    if (v < best.value) best = {x, v};
  }

  constexpr double inv_phi = 0.6180339887498949;
  auto golden = [&](double a, double b) {
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    if (f1 < best.value) best = {x1, f1};
    if (f2 < best.value) best = {x2, f2};
    while (b - a > tol) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = f(x1);
        if (f1 < best.value) best = {x1, f1};
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = f(x2);
        if (f2 < best.value) best = {x2, f2};
      }
    }
  };

  for (int i = 0; i < n_samples; ++i) {
    const bool left_ok = i == 0 || vals[i] <= vals[i - 1];
    const bool right_ok = i == n_samples - 1 || vals[i] <= vals[i + 1];
    if (!(left_ok && right_ok)) continue;
    if (!std::isfinite(vals[static_cast<std::size_t>(i)])) continue;
    const double a = (i > 0) ? lo + step * (i - 1) : lo;
    const double b = (i < n_samples - 1) ? lo + step * (i + 1) : hi;
    golden(a, b);
  }
  return best;
}

}  // namespace eik

#endif  // EIK_MINIMIZE_HPP
