#include <doctest.h>

#include <set>

#include "eik/grid.hpp"
#include "eik/rng.hpp"

using namespace eik;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid(5, 0.1, Vec{0, 0, 0, 0}, std::array<std::int64_t, 4>{3, 3, 3, 3}),
                  ConfigError);
  CHECK_THROWS_AS(Grid(1, 0.0, Vec{0.0}, std::array<std::int64_t, 1>{3}), ConfigError);
  CHECK_THROWS_AS(Grid(1, 0.1, Vec{0.0}, std::array<std::int64_t, 1>{1}), ConfigError);
  const Grid g(2, 0.5, Vec{0.0, 0.0}, std::array<std::int64_t, 2>{3, 4});
  CHECK(g.size() == 12);
}

TEST_CASE("index round trip is exact on every node") {
  const Grid g(3, 0.25, Vec{-1.0, 0.5, 2.0}, std::array<std::int64_t, 3>{3, 4, 5});
  std::set<std::int64_t> seen;
  for (std::int64_t f = 0; f < g.size(); ++f) {
    const NodeId n{f};
    const MultiIndex m = g.to_multi(n);
    CHECK(g.in_range(m));
    CHECK(g.to_node(m).flat == f);
    const Vec p = g.node_coord(n);
    for (int a = 0; a < 3; ++a) {
      CHECK(p[a] == g.lower()[a] + static_cast<double>(m[a]) * g.mesh());
    }
    seen.insert(f);
  }
  CHECK(static_cast<std::int64_t>(seen.size()) == g.size());
}

TEST_CASE("orthant enumeration") {
  const auto o1 = enumerate_orthants(1);
  REQUIRE(o1.size() == 2);
  CHECK(o1[0].code == 0);
  CHECK(o1[0].signs[0] == +1);
  CHECK(o1[1].signs[0] == -1);

  CHECK(enumerate_orthants(2).size() == 4);

  const auto o3 = enumerate_orthants(3);
  REQUIRE(o3.size() == 8);
  std::set<std::array<int, kMaxDim>> distinct;
  for (const auto& o : o3) distinct.insert(o.signs);
  CHECK(distinct.size() == 8);
  for (std::size_t c = 0; c < 8; ++c) CHECK(o3[c].code == static_cast<int>(c));

  CHECK_THROWS_AS(enumerate_orthants(5), ConfigError);
  CHECK_THROWS_AS(enumerate_orthants(0), ConfigError);
}

TEST_CASE("stencil nodes: positive orthant at origin of a 3x3 grid") {
  const Grid g(2, 1.0, Vec{0.0, 0.0}, std::array<std::int64_t, 2>{3, 3});
  const auto s = g.stencil_nodes(g.to_node({1, 0}), orthant_from_code(2, 0));
  REQUIRE(s.count == 3);
  const auto s0 = g.stencil_nodes(g.to_node({0, 0}), orthant_from_code(2, 0));
  CHECK(s0.inside[0]);
  CHECK(g.to_multi(s0.nodes[0]) == MultiIndex{1, 0});
  CHECK(s0.inside[1]);
  CHECK(g.to_multi(s0.nodes[1]) == MultiIndex{0, 1});
  CHECK(s0.inside[2]);
  CHECK(g.to_multi(s0.nodes[2]) == MultiIndex{1, 1});
}

TEST_CASE("stencil nodes: corner node has all outside markers") {
  const Grid g(2, 1.0, Vec{0.0, 0.0}, std::array<std::int64_t, 2>{3, 3});
  const auto s = g.stencil_nodes(g.to_node({2, 2}), orthant_from_code(2, 0));
  for (int k = 0; k < s.count; ++k) CHECK_FALSE(s.inside[k]);
}

TEST_CASE("stencil nodes: sign reflection in 3-D") {
  const Grid g(3, 1.0, Vec{0.0, 0.0, 0.0}, std::array<std::int64_t, 3>{3, 3, 3});
  Orthant o;
  o.dim = 3;
  o.signs = {+1, -1, +1};
  o.code = 2;
  const auto s = g.stencil_nodes(g.to_node({1, 1, 1}), o);
  CHECK(g.to_multi(s.nodes[0]) == MultiIndex{2, 1, 1});
  CHECK(g.to_multi(s.nodes[1]) == MultiIndex{1, 0, 1});
  CHECK(g.to_multi(s.nodes[2]) == MultiIndex{1, 1, 2});
  CHECK(g.to_multi(s.nodes[3]) == MultiIndex{2, 0, 2});
}

TEST_CASE("in-grid stencil nodes sit at L-infinity distance exactly h") {
  Rng rng(11);
  for (int dim = 1; dim <= 3; ++dim) {
    std::array<std::int64_t, kMaxDim> counts{};
    for (int a = 0; a < dim; ++a) counts[a] = 4;
    const Grid g(dim, 0.125, Vec::zero(dim), {counts.data(), static_cast<std::size_t>(dim)});
    for (int trial = 0; trial < 200; ++trial) {
      const NodeId x{rng.uniform_index(g.size())};
      const Orthant o = orthant_from_code(dim, static_cast<int>(rng.uniform_index(1 << dim)));
      const auto s = g.stencil_nodes(x, o);
      const Vec xc = g.node_coord(x);
      for (int k = 0; k < s.count; ++k) {
        if (!s.inside[k]) continue;
        const Vec yc = g.node_coord(s.nodes[k]);
        double linf = 0;
        for (int a = 0; a < dim; ++a) linf = std::max(linf, std::abs(yc[a] - xc[a]));
        CHECK(linf == doctest::Approx(g.mesh()).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("axis stencil entries over all orthants cover the 2d axis neighbors") {
  const Grid g(2, 1.0, Vec{0.0, 0.0}, std::array<std::int64_t, 2>{5, 5});
  const NodeId x = g.to_node({2, 2});
  std::set<std::int64_t> axis_nodes;
  for (const Orthant& o : enumerate_orthants(2)) {
    const auto s = g.stencil_nodes(x, o);
    for (int l = 0; l < 2; ++l) {
      REQUIRE(s.inside[l]);
      axis_nodes.insert(s.nodes[l].flat);
    }
  }
  const std::set<std::int64_t> expected{g.to_node({1, 2}).flat, g.to_node({3, 2}).flat,
                                        g.to_node({2, 1}).flat, g.to_node({2, 3}).flat};
  CHECK(axis_nodes == expected);
}

TEST_CASE("from_box realizes counts = round(extent/h) + 1") {
  const Grid g = Grid::from_box(1, 0.1, Vec{0.0}, Vec{1.1});
  CHECK(g.size() == 12);
  const Grid g2 = Grid::from_box(2, 0.05, Vec{-1.0, -1.0}, Vec{1.0, 1.0});
  CHECK(g2.count(0) == 41);
  CHECK(g2.size() == 41 * 41);
}
