#include <gtest/gtest.h>

#include <algorithm>
#include <climits>
#include <random>

#include "qmedian/error.hpp"
#include "qmedian/graph.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace qmedian;

namespace {

Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace

TEST(GraphCore, RejectsLoopsDuplicatesAndRange) {
  const std::vector<Edge> loop{{0, 0}};
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  const std::vector<Edge> range{{0, 2}};
  for (const auto* edges : {&loop, &dup, &range}) {
    try {
      Graph::from_edges(2, *edges);
      FAIL() << "accepted a bad edge list";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Validation);
    }
  }
  EXPECT_EQ(Graph::from_edges_dedup(2, dup).size(), 1u);
}

TEST(GraphCore, DistanceExamples) {
  EXPECT_EQ(graphs::cycle(4).distance(0, 2), 2);
  const Graph k3 = graphs::complete(3);
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) EXPECT_EQ(k3.distance(u, v), u == v ? 0 : 1);
  }
  EXPECT_EQ(graphs::grid(3, 3).distance(0, 8), 4);
}

TEST(GraphCore, DistanceMatrixMatchesOracleAndAxioms) {
  std::mt19937_64 rng(0);
  for (int t = 0; t < 40; ++t) {
    const Graph g = random_graph(rng, 2 + t % 9, 0.35);
    const auto ref = oracle::distances(g);
    const auto& d = g.distances();
    for (int u = 0; u < g.order(); ++u) {
      const auto row = bfs_distances(g, u);
      for (int v = 0; v < g.order(); ++v) {
        const int expect = ref[u][v] == INT_MAX ? DistanceMatrix::kInfinite : ref[u][v];
        ASSERT_EQ(d(u, v), expect);
        ASSERT_EQ(row[v], expect);
        ASSERT_EQ(d(u, v), d(v, u));
        for (int w = 0; w < g.order(); ++w) {
          if (d(u, w) != DistanceMatrix::kInfinite && d(w, v) != DistanceMatrix::kInfinite) {
            ASSERT_LE(d(u, v), d(u, w) + d(w, v));
          }
        }
      }
      ASSERT_EQ(d(u, u), 0);
    }
  }
}

TEST(GraphCore, IntervalExamples) {
  EXPECT_EQ(interval(graphs::cycle(4), 0, 2).count(), 4u);
  EXPECT_EQ(interval(graphs::complete(3), 0, 1).members(), (std::vector<int>{0, 1}));
  EXPECT_EQ(interval(graphs::grid(3, 3), 0, 8).count(), 9u);
  const Graph g = graphs::petersen();
  for (int a = 0; a < g.order(); ++a) {
    EXPECT_EQ(interval(g, a, a).members(), std::vector<int>{a});
    for (int b = 0; b < g.order(); ++b) {
      const auto i = interval(g, a, b);
      EXPECT_TRUE(i.contains(a) && i.contains(b));
    }
  }
  try {
    interval(Graph(2), 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DisconnectedPair);
  }
}

TEST(GraphCore, GeodesicIsShortestWalk) {
  const Graph g = graphs::grid(3, 4);
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) {
      const auto p = geodesic(g, a, b);
      ASSERT_EQ(static_cast<int>(p.size()) - 1, g.distance(a, b));
      ASSERT_EQ(p.front(), a);
      ASSERT_EQ(p.back(), b);
      for (std::size_t i = 0; i + 1 < p.size(); ++i) ASSERT_TRUE(g.adjacent(p[i], p[i + 1]));
    }
  }
}

TEST(GraphCore, ConvexityMatchesGeodesicClosure) {
  const Graph g = graphs::grid(3, 3);
  for (unsigned mask = 1; mask < (1u << 9); mask += 7) {
    std::vector<int> m;
    for (int v = 0; v < 9; ++v) {
      if (mask >> v & 1u) m.push_back(v);
    }
    EXPECT_EQ(is_convex(g, VertexSet(9, m)), oracle::geodesic_closure(g, m) == m);
  }
}

TEST(GraphCore, PatternExamples) {
  EXPECT_FALSE(find_induced(pattern_graph(Pattern::K23), Pattern::K23).empty());
  EXPECT_TRUE(find_induced(graphs::cycle(4), Pattern::K4minus).empty());
  const Graph prism_minus = graphs::delete_vertex(graphs::product(graphs::complete(2), graphs::complete(3)), 5);
  EXPECT_FALSE(find_induced(prism_minus, Pattern::House).empty());
}

TEST(GraphCore, PatternSearchAgreesWithNaiveOracle) {
  std::mt19937_64 rng(1);
  const Pattern all[] = {Pattern::K23, Pattern::K4minus, Pattern::Q3minus, Pattern::House, Pattern::C5};
  for (int t = 0; t < 60; ++t) {
    const Graph g = random_graph(rng, 4 + t % 5, 0.5);
    for (Pattern p : all) {
      const Graph pg = pattern_graph(p);
      const auto found = find_induced(g, p);
      ASSERT_EQ(!found.empty(), oracle::has_induced(g, pg)) << to_string(p);
      for (const auto& emb : found) {
        ASSERT_EQ(static_cast<int>(emb.size()), pg.order());
        for (int i = 0; i < pg.order(); ++i) {
          for (int j = 0; j < pg.order(); ++j) {
            if (i != j) { ASSERT_EQ(g.adjacent(emb[i], emb[j]), pg.adjacent(i, j)); }
          }
        }
      }
    }
  }
}

TEST(GraphCore, Isomorphism) {
  EXPECT_TRUE(are_isomorphic(graphs::cycle(4), graphs::product(graphs::complete(2), graphs::complete(2))));
  EXPECT_FALSE(are_isomorphic(graphs::complete(3), graphs::path(3)));
  EXPECT_TRUE(are_isomorphic(graphs::petersen(), graphs::petersen()));
  EXPECT_FALSE(are_isomorphic(graphs::cycle(6), graphs::product(graphs::complete(2), graphs::complete(3))));
  try {
    are_isomorphic(graphs::path(70), graphs::path(70));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeLimitExceeded);
  }
}

TEST(GraphCore, ComponentsAndInduced) {
  const Graph g = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {2, 3}});
  EXPECT_EQ(g.components().size(), 3u);
  EXPECT_FALSE(g.is_connected());
  std::vector<int> old;
  const Graph h = graphs::cycle(5).induced(VertexSet(5, {1, 2, 4}), &old);
  EXPECT_EQ(old, (std::vector<int>{1, 2, 4}));
  EXPECT_EQ(h.size(), 1u);
}
