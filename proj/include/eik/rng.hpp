#ifndef EIK_RNG_HPP
#define EIK_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace eik {

/// splitmix64 step; used to derive independent sub-stream seeds from one
/// user-facing seed (seed + stream index -> engine seed).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// mt19937_64 with portable value extraction. std::*_distribution is
/// implementation-defined, so uniforms and gaussians are derived by hand to
/// keep streams identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Sub-stream k of a base seed; documented stream-splitting contract.
  static Rng stream(std::uint64_t seed, std::uint64_t k) { return Rng(seed + k); }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::int64_t uniform_index(std::int64_t n) {
    return static_cast<std::int64_t>(uniform01() * static_cast<double>(n)) % n;
  }

  /// Standard normal via Box-Muller (no cached spare; deterministic stream).
  double gaussian() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace eik

#endif  // EIK_RNG_HPP
