#include "corpus.hpp"

#include <algorithm>

#include "qmedian/qm_structure.hpp"

namespace qmedian::testing {

std::vector<CorpusGraph> recognition_corpus() {
  using namespace graphs;
  return {
      {"K3", complete(3), true, false},
      {"C4", cycle(4), true, true},
      {"Q3", hypercube(3), true, true},
      {"K2xK3", product(complete(2), complete(3)), true, false},
      {"grid3x3", grid(3, 3), true, true},
      {"K3xK3", product(complete(3), complete(3)), true, false},
      {"C5", cycle(5), false, false},
      {"K23", complete_bipartite(2, 3), false, false},
      {"K4minus", pattern_graph(Pattern::K4minus), false, false},
      {"Petersen", petersen(), false, false},
  };
}

std::vector<CorpusGraph> quasi_median_corpus() {
  using namespace graphs;
  std::vector<CorpusGraph> out;
  for (auto& c : recognition_corpus()) {
    if (c.quasi_median) out.push_back(std::move(c));
  }
  out.push_back({"K2", complete(2), true, true});
  out.push_back({"P3", path(3), true, true});
  out.push_back({"K4", complete(4), true, false});
  out.push_back({"star3", star(3), true, true});
  out.push_back({"ladder2x3", grid(2, 3), true, true});
  return out;
}

Graph random_gated_amalgam(Rng& rng, int max_vertices) {
  std::uniform_int_distribution<int> clique_size(2, 3);
  Graph g = graphs::complete(clique_size(rng));
  for (int round = 0; round < 12; ++round) {
    const auto prisms = enumerate_prisms(HyperplaneDecomposition(g, true));
    const int m = clique_size(rng);
    std::vector<const Prism*> fitting;
    for (const auto& p : prisms) {
      if (g.order() + static_cast<int>(p.vertices.count()) * (m - 1) <= max_vertices) fitting.push_back(&p);
    }
    if (fitting.empty()) break;
    const Prism& p = *fitting[std::uniform_int_distribution<std::size_t>(0, fitting.size() - 1)(rng)];
    const auto members = p.vertices.members();
    const int k = static_cast<int>(members.size());
    // Copy c in 1..m-1 of prism vertex i gets id n + (c-1)*k + i.
    auto id = [&](int c, int i) { return c == 0 ? members[i] : g.order() + (c - 1) * k + i; };
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    for (int c = 0; c < m; ++c) {
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
          if (c > 0 && g.adjacent(members[i], members[j])) edges.emplace_back(id(c, i), id(c, j));
        }
        for (int c2 = c + 1; c2 < m; ++c2) edges.emplace_back(id(c, i), id(c2, i));
      }
    }
    g = Graph::from_edges(g.order() + k * (m - 1), edges);
  }
  return g;
}

CharacterSpace random_character_space(Rng& rng, int max_points, int max_characters, int max_clades) {
  const int n = std::uniform_int_distribution<int>(2, max_points)(rng);
  const int count = std::uniform_int_distribution<int>(1, max_characters)(rng);
  std::vector<std::vector<std::vector<int>>> chars;
  for (int c = 0; c < count; ++c) {
    const int k = std::uniform_int_distribution<int>(2, std::min(max_clades, n))(rng);
    std::vector<int> label(n);
    // Surjective labelling: a shuffled prefix covers every clade.
    for (int x = 0; x < n; ++x) label[x] = x < k ? x : std::uniform_int_distribution<int>(0, k - 1)(rng);
    std::shuffle(label.begin(), label.end(), rng);
    std::vector<std::vector<int>> clades(k);
    for (int x = 0; x < n; ++x) clades[label[x]].push_back(x);
    chars.push_back(std::move(clades));
  }
  return CharacterSpace(n, chars);
}

}  // namespace qmedian::testing
