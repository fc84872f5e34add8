#include <algorithm>
#include <deque>
#include <iterator>

#include "qmedian/error.hpp"
#include "qmedian/median_derivatives.hpp"

namespace qmedian {

Polytope make_polytope(const HyperplaneDecomposition& d, const VertexSet& vertices) {
  if (!is_gated(d.graph(), vertices)) raise(ErrorKind::InternalInvariantViolation, "polytope is not gated");
  return Polytope{vertices, d.crossing(vertices), &d};
}

Polytope polytope_hull(const HyperplaneDecomposition& d, const VertexSet& s) {
  auto hull = gated_hull(d, s);
  return Polytope{hull.vertices, d.crossing(hull.vertices), &d};
}

std::vector<Polytope> enumerate_polytopes(const HyperplaneDecomposition& d, int cap) {
  const Graph& g = d.graph();
  if (g.order() > cap) {
    raise(ErrorKind::SizeLimitExceeded,
          "polytope enumeration capped at " + std::to_string(cap) + " vertices, got " + std::to_string(g.order()));
  }
  // Every gated hull is reached from a singleton by repeatedly adding one
  // vertex and taking the hull again.
  std::unordered_map<VertexSet, int, VertexSetHash> seen;
  std::vector<Polytope> out;
  std::deque<int> queue;
  auto add = [&](const VertexSet& s) {
    auto hull = gated_hull(d, s).vertices;
    if (seen.count(hull)) return;
    seen.emplace(hull, static_cast<int>(out.size()));
    out.push_back(Polytope{hull, d.crossing(hull), &d});
    queue.push_back(static_cast<int>(out.size()) - 1);
  };
  for (int x = 0; x < g.order(); ++x) add(VertexSet(g.order(), {x}));
  while (!queue.empty()) {
    const VertexSet base = out[queue.front()].vertices;
    queue.pop_front();
    for (int x = 0; x < g.order(); ++x) {
      if (base.contains(x)) continue;
      VertexSet s = base;
      s.insert(x);
      add(s);
    }
  }
  std::sort(out.begin(), out.end(), [](const Polytope& a, const Polytope& b) {
    if (a.h() != b.h()) return a.h() < b.h();
    return a.vertices < b.vertices;
  });
  return out;
}

PolytopeGraph build_polytope_graph(const HyperplaneDecomposition& d, int cap) {
  PolytopeGraph pg;
  pg.nodes = enumerate_polytopes(d, cap);
  const int n = static_cast<int>(pg.nodes.size());
  for (int i = 0; i < n; ++i) pg.index.emplace(pg.nodes[i].vertices, i);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& a = pg.nodes[i];
      const auto& b = pg.nodes[j];
      if (b.h() == a.h() + 1 && a.vertices.is_subset_of(b.vertices)) edges.emplace_back(i, j);
    }
  }
  pg.graph = Graph::from_edges(n, edges);
  pg.covers.resize(edges.size());
  for (auto [lo, hi] : edges) pg.covers[pg.graph.edge_index(lo, hi)] = {lo, hi};
  return pg;
}

namespace {

void require_same_source(const Polytope& a, const Polytope& b) {
  if (!a.source || a.source != b.source) raise(ErrorKind::MixedGraphs, "polytopes come from different graphs");
}

int count_difference(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return static_cast<int>(out.size());
}

}  // namespace

PolytopeDistanceTerms polytope_distance_terms(const Polytope& a, const Polytope& b) {
  require_same_source(a, b);
  const auto& d = *a.source;
  PolytopeDistanceTerms t;
  t.a_minus_b = count_difference(a.hyperplanes, b.hyperplanes);
  t.b_minus_a = count_difference(b.hyperplanes, a.hyperplanes);
  t.separating = static_cast<int>(d.separating_sets(a.vertices, b.vertices).size());
  t.h_union = static_cast<int>(d.crossing(a.vertices | b.vertices).size());
  return t;
}

int polytope_distance(const Polytope& a, const Polytope& b) {
  const auto t = polytope_distance_terms(a, b);
  if (t.first_form() != t.second_form(a.h(), b.h())) {
    raise(ErrorKind::InternalInvariantViolation, "the two polytope distance forms disagree");
  }
  return t.first_form();
}

Polytope polytope_median(const Polytope& a, const Polytope& b, const Polytope& c) {
  require_same_source(a, b);
  require_same_source(a, c);
  const auto& d = *a.source;
  VertexSet m = d.graph().all_vertices();
  for (const auto& hp : d.hyperplanes()) {
    for (const auto& s : hp.sectors) {
      const int inside = a.vertices.is_subset_of(s) + b.vertices.is_subset_of(s) + c.vertices.is_subset_of(s);
      if (inside >= 2) m &= s;
    }
  }
  if (m.empty()) raise(ErrorKind::InternalInvariantViolation, "empty polytope median");
  return make_polytope(d, m);
}

bool polytope_between(const Polytope& a, const Polytope& b, const Polytope& c) {
  require_same_source(a, b);
  require_same_source(a, c);
  for (const auto& hp : a.source->hyperplanes()) {
    for (const auto& s : hp.sectors) {
      const bool has_a = a.vertices.is_subset_of(s);
      const bool has_b = b.vertices.is_subset_of(s);
      const bool has_c = c.vertices.is_subset_of(s);
      if (has_c && !has_a && !has_b) return false;
      if (has_a && has_b && !has_c) return false;
    }
  }
  return true;
}

}  // namespace qmedian
