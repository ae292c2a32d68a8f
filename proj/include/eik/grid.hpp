#ifndef EIK_GRID_HPP
#define EIK_GRID_HPP

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eik {

/// Hard dimension cap: orthant enumeration is 2^d and stencil scans are 3^d,
/// both of which stop being desk-scale beyond this. Checked, never silent.
inline constexpr int kMaxDim = 4;

/// Invalid configuration (mesh step, unknown benchmark, bad flag values, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-capacity point in R^d, d <= kMaxDim. Value type, no heap.
struct Vec {
  std::array<double, kMaxDim> c{};
  int dim = 0;

  Vec() = default;
  Vec(std::initializer_list<double> xs) {
    assert(static_cast<int>(xs.size()) <= kMaxDim);
    for (double x : xs) c[dim++] = x;
  }
  static Vec zero(int d) {
    Vec p;
    p.dim = d;
    return p;
  }
  static Vec from(std::span<const double> xs) {
    Vec p;
    p.dim = static_cast<int>(xs.size());
    assert(p.dim <= kMaxDim);
    for (int i = 0; i < p.dim; ++i) p.c[i] = xs[i];
    return p;
  }
  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  int size() const { return dim; }
  std::span<const double> span() const { return {c.data(), static_cast<std::size_t>(dim)}; }

  double norm2() const {
    double s = 0;
    for (int i = 0; i < dim; ++i) s += c[i] * c[i];
    return s;
  }
};

inline double norm(const Vec& p) {
  double s = 0;
  for (int i = 0; i < p.dim; ++i) s += p[i] * p[i];
  return std::sqrt(s);
}

inline Vec operator-(const Vec& a, const Vec& b) {
  assert(a.dim == b.dim);
  Vec r = Vec::zero(a.dim);
  for (int i = 0; i < a.dim; ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec operator+(const Vec& a, const Vec& b) {
  assert(a.dim == b.dim);
  Vec r = Vec::zero(a.dim);
  for (int i = 0; i < a.dim; ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec operator*(double s, const Vec& a) {
  Vec r = Vec::zero(a.dim);
  for (int i = 0; i < a.dim; ++i) r[i] = s * a[i];
  return r;
}

/// Flat node index, bijective with the d-tuple multi-index (row-major,
/// last axis fastest).
struct NodeId {
  std::int64_t flat = -1;
  friend bool operator==(NodeId a, NodeId b) { return a.flat == b.flat; }
  friend bool operator!=(NodeId a, NodeId b) { return a.flat != b.flat; }
  friend bool operator<(NodeId a, NodeId b) { return a.flat < b.flat; }
};

using MultiIndex = std::array<std::int64_t, kMaxDim>;

/// One of the 2^d sign orthants. Bit l of `code` set means signs[l] == -1.
struct Orthant {
  std::array<int, kMaxDim> signs{};
  int code = 0;
  int dim = 0;
};

inline Orthant orthant_from_code(int dim, int code) {
  assert(dim >= 1 && dim <= kMaxDim);
  assert(code >= 0 && code < (1 << dim));
  Orthant o;
  o.dim = dim;
  o.code = code;
  for (int l = 0; l < dim; ++l) o.signs[l] = (code >> l) & 1 ? -1 : +1;
  return o;
}

/// All 2^d orthants in ascending code order.
inline std::vector<Orthant> enumerate_orthants(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw ConfigError("unsupported dimension " + std::to_string(dim) +
                      " (supported: 1.." + std::to_string(kMaxDim) + ")");
  }
  std::vector<Orthant> out;
  out.reserve(std::size_t{1} << dim);
  for (int code = 0; code < (1 << dim); ++code) out.push_back(orthant_from_code(dim, code));
  return out;
}

/// The d+1 simplex stencil of a node for one orthant: the d axis neighbors
/// x + h*s_l*e_l followed by the diagonal x + h*s. Entries falling off the
/// grid are flagged, not errors.
struct StencilNodes {
  std::array<NodeId, kMaxDim + 1> nodes{};
  std::array<bool, kMaxDim + 1> inside{};
  int count = 0;  // == dim + 1
};

/// Regular axis-aligned lattice with a single scalar mesh step h in every
/// axis. Immutable after construction; safe to share across solver runs.
class Grid {
 public:
  Grid(int dim, double mesh, const Vec& lower, std::span<const std::int64_t> counts) {
    if (dim < 1 || dim > kMaxDim) {
      throw ConfigError("grid dimension must be in 1.." + std::to_string(kMaxDim));
    }
    if (!(mesh > 0)) throw ConfigError("mesh step must be positive");
    if (static_cast<int>(counts.size()) != dim || lower.dim != dim) {
      throw ConfigError("grid lower/counts arity mismatch");
    }
    dim_ = dim;
    mesh_ = mesh;
    lower_ = lower;
    total_ = 1;
    for (int i = 0; i < dim; ++i) {
      if (counts[i] < 2) throw ConfigError("each axis needs at least 2 nodes");
      counts_[i] = counts[i];
      total_ *= counts[i];
    }
    strides_[dim - 1] = 1;
    for (int i = dim - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * counts_[i + 1];
  }

  /// Covers [lower, upper] with step h; upper is realized as
  /// lower + (counts-1)*h, counts = round(extent/h) + 1.
  static Grid from_box(int dim, double mesh, const Vec& lower, const Vec& upper) {
    std::array<std::int64_t, kMaxDim> counts{};
    for (int i = 0; i < dim; ++i) {
      const double extent = upper[i] - lower[i];
      if (!(extent > 0)) throw ConfigError("box upper must exceed lower on every axis");
      counts[i] = static_cast<std::int64_t>(std::floor(extent / mesh + 0.5)) + 1;
    }
    return Grid(dim, mesh, lower, {counts.data(), static_cast<std::size_t>(dim)});
  }

  int dim() const { return dim_; }
  double mesh() const { return mesh_; }
  const Vec& lower() const { return lower_; }
  std::int64_t count(int axis) const { return counts_[static_cast<std::size_t>(axis)]; }
  std::int64_t size() const { return total_; }

  /// Node count along each axis.
  std::span<const std::int64_t> counts() const {
    return {counts_.data(), static_cast<std::size_t>(dim_)};
  }

  bool in_range(const MultiIndex& m) const {
    for (int i = 0; i < dim_; ++i) {
      if (m[i] < 0 || m[i] >= counts_[i]) return false;
    }
    return true;
  }

  NodeId to_node(const MultiIndex& m) const {
    assert(in_range(m));
    std::int64_t flat = 0;
    for (int i = 0; i < dim_; ++i) flat += m[i] * strides_[i];
    return NodeId{flat};
  }

  MultiIndex to_multi(NodeId n) const {
    assert(n.flat >= 0 && n.flat < total_);
    MultiIndex m{};
    std::int64_t rem = n.flat;
    for (int i = 0; i < dim_; ++i) {
      m[i] = rem / strides_[i];
      rem %= strides_[i];
    }
    return m;
  }

  Vec node_coord(NodeId n) const {
    const MultiIndex m = to_multi(n);
    Vec p = Vec::zero(dim_);
    for (int i = 0; i < dim_; ++i) p[i] = lower_[i] + static_cast<double>(m[i]) * mesh_;
    return p;
  }

  /// Neighbor at multi-index offset `delta`; unset when off-grid.
  bool offset_node(const MultiIndex& m, std::span<const int> delta, NodeId& out) const {
    MultiIndex t = m;
    for (int i = 0; i < dim_; ++i) t[i] += delta[i];
    if (!in_range(t)) return false;
    out = to_node(t);
    return true;
  }

  StencilNodes stencil_nodes(NodeId x, const Orthant& o) const {
    assert(o.dim == dim_);
    const MultiIndex m = to_multi(x);
    StencilNodes s;
    s.count = dim_ + 1;
    for (int l = 0; l < dim_; ++l) {
      MultiIndex t = m;
      t[l] += o.signs[l];
      if (in_range(t)) {
        s.nodes[l] = to_node(t);
        s.inside[l] = true;
      }
    }
    MultiIndex t = m;
    for (int l = 0; l < dim_; ++l) t[l] += o.signs[l];
    if (in_range(t)) {
      s.nodes[dim_] = to_node(t);
      s.inside[dim_] = true;
    }
    return s;
  }

 private:
  int dim_ = 0;
  double mesh_ = 0;
  Vec lower_;
  std::array<std::int64_t, kMaxDim> counts_{};
  std::array<std::int64_t, kMaxDim> strides_{};
  std::int64_t total_ = 0;
};

}  // namespace eik

#endif  // EIK_GRID_HPP
