#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "qmedian/action.hpp"
#include "qmedian/error.hpp"
#include "qmedian/median_derivatives.hpp"
#include "qmedian/quasi_cubulation.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace qmedian;
using qmedian::testing::quasi_median_corpus;

namespace {

std::vector<VertexSet> brute_force_polytopes(const Graph& g) {
  std::set<std::vector<int>> seen;
  const int n = g.order();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int v = 0; v < n; ++v) {
      if (mask >> v & 1u) s.push_back(v);
    }
    seen.insert(oracle::min_gated_superset(g, s));
  }
  std::vector<VertexSet> out;
  for (const auto& s : seen) out.emplace_back(n, s);
  return out;
}

}  // namespace

TEST(Polytopes, Examples) {
  const auto k2 = build_polytope_graph(HyperplaneDecomposition(graphs::complete(2)));
  EXPECT_EQ(k2.nodes.size(), 3u);
  EXPECT_TRUE(are_isomorphic(k2.graph, graphs::path(3)));
  const auto k3 = build_polytope_graph(HyperplaneDecomposition(graphs::complete(3)));
  EXPECT_TRUE(are_isomorphic(k3.graph, graphs::star(3)));
  const HyperplaneDecomposition c4(graphs::cycle(4));
  const auto c4g = build_polytope_graph(c4);
  EXPECT_EQ(c4g.nodes.size(), 9u);
  EXPECT_EQ(c4g.nodes.size(), enumerate_prisms(c4).size());
  EXPECT_TRUE(are_isomorphic(c4g.graph, graphs::grid(3, 3)));
}

TEST(Polytopes, NodesAreAllGatedHulls) {
  for (const auto& c : quasi_median_corpus()) {
    if (c.graph.order() > 9) continue;
    HyperplaneDecomposition d(c.graph);
    const auto pg = build_polytope_graph(d);
    auto expect = brute_force_polytopes(c.graph);
    std::vector<VertexSet> got;
    for (const auto& p : pg.nodes) got.push_back(p.vertices);
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, expect) << c.name;
    for (const auto& [lo, hi] : pg.covers) {
      EXPECT_TRUE(pg.nodes[lo].vertices.is_subset_of(pg.nodes[hi].vertices));
      EXPECT_EQ(pg.nodes[hi].h(), pg.nodes[lo].h() + 1);
    }
    EXPECT_TRUE(oracle::median(pg.graph)) << c.name;
  }
}

TEST(Polytopes, CapIsEnforced) {
  try {
    build_polytope_graph(HyperplaneDecomposition(graphs::grid(3, 4)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeLimitExceeded);
  }
}

TEST(Polytopes, DistanceExamples) {
  const HyperplaneDecomposition k2(graphs::complete(2));
  const auto a = polytope_hull(k2, VertexSet(2, {0}));
  const auto b = polytope_hull(k2, VertexSet(2, {1}));
  EXPECT_EQ(polytope_distance(a, a), 0);
  EXPECT_EQ(polytope_distance(a, b), 2);
  const HyperplaneDecomposition c4(graphs::cycle(4));
  EXPECT_EQ(polytope_distance(polytope_hull(c4, VertexSet(4, {0})), polytope_hull(c4, VertexSet::full(4))), 2);
  try {
    polytope_distance(a, polytope_hull(c4, VertexSet(4, {0})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MixedGraphs);
  }
}

TEST(Polytopes, MedianExamplesAndBruteForce) {
  const HyperplaneDecomposition c4(graphs::cycle(4));
  auto p = [&](std::initializer_list<int> s) { return polytope_hull(c4, VertexSet(4, s)); };
  EXPECT_EQ(polytope_median(p({0}), p({1}), p({2})).vertices.members(), std::vector<int>{1});
  EXPECT_EQ(polytope_median(p({0}), p({0}), p({0})).vertices.members(), std::vector<int>{0});
  const HyperplaneDecomposition k3(graphs::complete(3));
  auto q = [&](int v) { return polytope_hull(k3, VertexSet(3, {v})); };
  EXPECT_EQ(polytope_median(q(0), q(1), q(2)).vertices.count(), 3u);

  for (const auto& c : quasi_median_corpus()) {
    if (c.graph.order() > 6) continue;
    HyperplaneDecomposition d(c.graph);
    const auto pg = build_polytope_graph(d);
    const auto& dist = pg.graph.distances();
    const int n = static_cast<int>(pg.nodes.size());
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int e = 0; e < n; ++e) {
          const auto m = polytope_median(pg.nodes[a], pg.nodes[b], pg.nodes[e]);
          const int mi = pg.find(m.vertices);
          ASSERT_GE(mi, 0);
          int brute = -1;
          for (int x = 0; x < n; ++x) {
            if (dist(a, x) + dist(x, b) == dist(a, b) && dist(b, x) + dist(x, e) == dist(b, e) &&
                dist(a, x) + dist(x, e) == dist(a, e)) {
              brute = x;
            }
          }
          ASSERT_EQ(mi, brute) << c.name;
          ASSERT_TRUE(polytope_between(pg.nodes[a], pg.nodes[b], m));
        }
        for (int x = 0; x < n; ++x) {
          ASSERT_EQ(polytope_between(pg.nodes[a], pg.nodes[b], pg.nodes[x]), dist(a, x) + dist(x, b) == dist(a, b))
              << c.name;
        }
      }
    }
  }
}

TEST(PrismGraph, Examples) {
  const auto k2 = build_prism_graph(HyperplaneDecomposition(graphs::complete(2)));
  EXPECT_TRUE(are_isomorphic(k2.graph, graphs::path(3)));
  const HyperplaneDecomposition k3(graphs::complete(3));
  const auto k3g = build_prism_graph(k3);
  EXPECT_TRUE(are_isomorphic(k3g.graph, graphs::star(3)));
  EXPECT_EQ(prism_hyperplane_bijection(k3, k3g).prism_decomposition->count(), 3);
  const HyperplaneDecomposition c4(graphs::cycle(4));
  const auto c4g = build_prism_graph(c4);
  EXPECT_EQ(c4g.nodes.size(), 9u);
  const auto b = prism_hyperplane_bijection(c4, c4g);
  EXPECT_EQ(b.prism_decomposition->count(), 4);
  EXPECT_TRUE(b.halfspaces_match);
  EXPECT_TRUE(separating_sectors(c4, 0, 0).empty());
  EXPECT_EQ(separating_sectors(c4, 0, 2).size(), 4u);
  EXPECT_EQ(c4g.graph.distance(c4g.vertex_node[0], c4g.vertex_node[2]), 4);
  const HyperplaneDecomposition k2d(graphs::complete(2));
  EXPECT_EQ(separating_sectors(k2d, 0, 1).size(), 2u);
}

TEST(PrismGraph, MedianWithOracleAndSquareShape) {
  qmedian::testing::Rng rng(5);
  std::vector<Graph> graphs;
  for (const auto& c : quasi_median_corpus()) graphs.push_back(c.graph);
  for (int k = 0; k < 6; ++k) graphs.push_back(qmedian::testing::random_gated_amalgam(rng, 14));
  for (const auto& g : graphs) {
    HyperplaneDecomposition d(g);
    const auto pg = build_prism_graph(d);
    ASSERT_TRUE(oracle::median(pg.graph));
    for (const auto& e : pg.covers) {
      const auto& lo = pg.nodes[e.lower];
      const auto& hi = pg.nodes[e.upper];
      ASSERT_EQ(hi.dimension(), lo.dimension() + 1);
      ASSERT_TRUE(lo.vertices.is_subset_of(hi.vertices));
      ASSERT_TRUE(lo.vertices.is_subset_of(d.sector(e.label)));
      ASSERT_TRUE(std::binary_search(hi.hyperplanes.begin(), hi.hyperplanes.end(), e.label.hyperplane));
    }
    // Induced squares: a bottom prism, two one-step enlargements, and their join.
    for (const auto& sq : induced_squares(pg.graph)) {
      std::vector<int> dims;
      for (int v : sq) dims.push_back(pg.nodes[v].dimension());
      const int lo = *std::min_element(dims.begin(), dims.end());
      const auto bottom = std::find(dims.begin(), dims.end(), lo) - dims.begin();
      const int top = sq[(bottom + 2) % 4];
      ASSERT_EQ(pg.nodes[top].dimension(), lo + 2);
      for (int side : {sq[(bottom + 1) % 4], sq[(bottom + 3) % 4]}) {
        ASSERT_EQ(pg.nodes[side].dimension(), lo + 1);
      }
    }
  }
}

TEST(PrismGraph, LiftRejectsNonAutomorphism) {
  const HyperplaneDecomposition c4(graphs::cycle(4));
  const auto pg = build_prism_graph(c4);
  try {
    lift_to_prisms(pg, {1, 0, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAutomorphism);
  }
}

TEST(PrismGraph, NoInversionExamples) {
  auto check = [](const Graph& g, const std::vector<std::vector<int>>& gens) {
    const GraphAction a(g, gens);
    HyperplaneDecomposition d(g);
    const auto pg = build_prism_graph(d);
    return no_hyperplane_inversion_check(pg, prism_hyperplane_bijection(d, pg), a.closure().elements).no_inversion;
  };
  EXPECT_TRUE(check(graphs::cycle(4), {{1, 2, 3, 0}}));
  EXPECT_TRUE(check(graphs::cycle(4), {}));
  EXPECT_TRUE(check(graphs::complete(3), {{1, 0, 2}, {1, 2, 0}}));
}

TEST(Collapse, Examples) {
  const HyperplaneDecomposition c4(graphs::cycle(4));
  EXPECT_TRUE(are_isomorphic(collapse(c4, {0}).target, graphs::complete(2)));
  const HyperplaneDecomposition q3(graphs::hypercube(3));
  EXPECT_TRUE(are_isomorphic(collapse(q3, {1}).target, graphs::cycle(4)));
  EXPECT_TRUE(are_isomorphic(collapse(q3, {}).target, graphs::hypercube(3)));
  try {
    collapse(HyperplaneDecomposition(graphs::complete(3)), {0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMedian);
  }
  try {
    collapse(c4, {7});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
  }
}

TEST(Collapse, DistanceLawOnMedianCorpus) {
  for (const auto& c : quasi_median_corpus()) {
    if (!c.median) continue;
    HyperplaneDecomposition d(c.graph);
    for (unsigned mask = 0; mask < (1u << d.count()); ++mask) {
      std::vector<int> drop;
      for (int h = 0; h < d.count(); ++h) {
        if (mask >> h & 1u) drop.push_back(h);
      }
      const auto m = collapse(d, drop);
      ASSERT_TRUE(oracle::median(m.target)) << c.name;
      for (int x = 0; x < c.graph.order(); ++x) {
        for (int y = 0; y < c.graph.order(); ++y) {
          int kept = 0;
          for (int h : m.kept) kept += d.separates(h, x, y);
          ASSERT_EQ(m.target.distance(m.projection[x], m.projection[y]), kept);
        }
      }
      for (const auto& f : m.fibres) {
        ASSERT_EQ(oracle::geodesic_closure(c.graph, f.members()), f.members());
        if (!m.kept.empty()) { ASSERT_FALSE(f.is_full()) << c.name; }
      }
    }
  }
}

TEST(PrismGraph, SectorCosectorWallsOnVerticesGiveBackX) {
  for (const auto& c : qmedian::testing::quasi_median_corpus()) {
    const HyperplaneDecomposition d(c.graph);
    std::vector<Character> walls;
    for (const auto& s : d.all_sectors()) {
      Character w{d.sector(s), d.sector(s).complement()};
      std::sort(w.begin(), w.end());
      walls.push_back(std::move(w));
    }
    const CharacterSpace space(c.graph.order(), walls);
    const auto cub = pointed_component(build_selector_graph(space, Flavor::Buneman));
    if (c.median) { EXPECT_TRUE(are_isomorphic(cub.graph, c.graph)) << c.name; }
  }
}

TEST(PrismGraph, MatchesSectorCosectorCubulationOnPrisms) {
  std::vector<qmedian::testing::CorpusGraph> graphs = qmedian::testing::quasi_median_corpus();
  qmedian::testing::Rng rng(21);
  for (int k = 0; k < 10; ++k) {
    graphs.push_back({"amalgam" + std::to_string(k), qmedian::testing::random_gated_amalgam(rng, 14), true, false});
  }
  for (const auto& c : graphs) {
    const HyperplaneDecomposition d(c.graph);
    const auto pg = build_prism_graph(d);
    const int n = static_cast<int>(pg.nodes.size());
    std::vector<Character> walls;
    for (const auto& s : d.all_sectors()) {
      VertexSet inside(n);
      for (int i = 0; i < n; ++i) {
        if (pg.nodes[i].vertices.is_subset_of(d.sector(s))) inside.insert(i);
      }
      Character w{inside, inside.complement()};
      std::sort(w.begin(), w.end());
      walls.push_back(std::move(w));
    }
    const CharacterSpace space(n, walls);
    const auto cub = pointed_component(build_selector_graph(space, Flavor::Buneman));
    EXPECT_TRUE(are_isomorphic(cub.graph, pg.graph)) << c.name << ": " << cub.nodes.size() << " vs " << n;
  }
}
