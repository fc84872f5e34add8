#include <algorithm>
#include <set>

#include <boost/pending/disjoint_sets.hpp>

#include "qmedian/error.hpp"
#include "qmedian/median_derivatives.hpp"

namespace qmedian {

PrismGraph build_prism_graph(const HyperplaneDecomposition& d) {
  PrismGraph pg;
  pg.nodes = enumerate_prisms(d);
  const int n = static_cast<int>(pg.nodes.size());
  for (int i = 0; i < n; ++i) pg.index.emplace(pg.nodes[i].vertices, i);
  pg.vertex_node.assign(d.graph().order(), -1);
  for (int i = 0; i < n; ++i) {
    if (pg.nodes[i].dimension() == 0) pg.vertex_node[pg.nodes[i].vertices.first()] = i;
  }

  std::vector<PrismEdge> raw;
  for (int i = 0; i < n; ++i) {
    const auto& p = pg.nodes[i];
    for (int j = 0; j < n; ++j) {
      const auto& q = pg.nodes[j];
      if (q.dimension() != p.dimension() + 1 || !p.vertices.is_subset_of(q.vertices)) continue;
      std::vector<int> extra;
      std::set_difference(q.hyperplanes.begin(), q.hyperplanes.end(), p.hyperplanes.begin(), p.hyperplanes.end(),
                          std::back_inserter(extra));
      if (extra.size() != 1) raise(ErrorKind::InternalInvariantViolation, "covering prisms differ by more than a factor");
      const int sec = d.sector_containing(extra[0], p.vertices);
      if (sec < 0) raise(ErrorKind::InternalInvariantViolation, "face crossed by its own extra hyperplane");
      raw.push_back({i, j, {extra[0], sec}});
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : raw) edges.emplace_back(e.lower, e.upper);
  pg.graph = Graph::from_edges(n, edges);
  pg.covers.resize(raw.size());
  for (const auto& e : raw) pg.covers[pg.graph.edge_index(e.lower, e.upper)] = e;
  return pg;
}

PrismHyperplaneBijection prism_hyperplane_bijection(const HyperplaneDecomposition& d, const PrismGraph& pg) {
  PrismHyperplaneBijection b;
  b.prism_decomposition = std::make_shared<const HyperplaneDecomposition>(pg.graph);
  const auto& pd = *b.prism_decomposition;
  b.hyperplane_to_sector.resize(pd.count());
  for (int h = 0; h < pd.count(); ++h) {
    const SectorId label = pg.covers[pd[h].edges.front()].label;
    for (int e : pd[h].edges) {
      if (pg.covers[e].label != label) {
        raise(ErrorKind::InternalInvariantViolation,
              "prism-graph hyperplane " + std::to_string(h) + " carries two sector labels");
      }
    }
    b.hyperplane_to_sector[h] = label;
    if (!b.sector_to_hyperplane.emplace(label, h).second) {
      raise(ErrorKind::InternalInvariantViolation, "two prism-graph hyperplanes share a sector label");
    }
  }
  if (static_cast<int>(b.sector_to_hyperplane.size()) != d.sector_count()) {
    raise(ErrorKind::InternalInvariantViolation, "sector labels do not cover every sector");
  }

  b.halfspaces_match = true;
  b.inside_halfspace.assign(pd.count(), -1);
  for (int h = 0; h < pd.count(); ++h) {
    const VertexSet& sector = d.sector(b.hyperplane_to_sector[h]);
    VertexSet inside(pg.graph.order());
    for (int i = 0; i < pg.graph.order(); ++i) {
      if (pg.nodes[i].vertices.is_subset_of(sector)) inside.insert(i);
    }
    const auto& halves = pd[h].sectors;
    for (std::size_t k = 0; k < halves.size(); ++k) {
      if (halves[k] == inside) b.inside_halfspace[h] = static_cast<int>(k);
    }
    if (halves.size() != 2 || b.inside_halfspace[h] < 0) b.halfspaces_match = false;
  }
  return b;
}

std::vector<SectorId> separating_sectors(const HyperplaneDecomposition& d, int x, int y) {
  std::vector<SectorId> out;
  for (int h = 0; h < d.count(); ++h) {
    if (!d.separates(h, x, y)) continue;
    out.push_back({h, d[h].sector_of[x]});
    out.push_back({h, d[h].sector_of[y]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SectorId> separating_hyperplanes_in_prism_graph(const PrismGraph& pg,
                                                            const PrismHyperplaneBijection& b, int x, int y) {
  const auto& pd = *b.prism_decomposition;
  std::vector<SectorId> out;
  for (int h : pd.separating(pg.vertex_node[x], pg.vertex_node[y])) out.push_back(b.hyperplane_to_sector[h]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> lift_to_prisms(const PrismGraph& pg, const std::vector<int>& perm) {
  std::vector<int> lifted(pg.nodes.size(), -1);
  for (std::size_t i = 0; i < pg.nodes.size(); ++i) {
    const auto& p = pg.nodes[i].vertices;
    VertexSet image(p.universe());
    p.for_each([&](int v) { image.insert(perm[v]); });
    const int j = pg.find(image);
    if (j < 0) raise(ErrorKind::NotAutomorphism, "image of prism " + std::to_string(i) + " is not a prism");
    lifted[i] = j;
  }
  return lifted;
}

InversionReport no_hyperplane_inversion_check(const PrismGraph& pg, const PrismHyperplaneBijection& b,
                                              const std::vector<std::vector<int>>& elements) {
  const auto& pd = *b.prism_decomposition;
  const auto edges = pg.graph.edges();
  for (std::size_t g = 0; g < elements.size(); ++g) {
    const auto lifted = lift_to_prisms(pg, elements[g]);
    for (int h = 0; h < pd.count(); ++h) {
      const auto [p, q] = edges[pd[h].edges.front()];
      const int gp = lifted[p], gq = lifted[q];
      const int e = pg.graph.edge_index(gp, gq);
      if (e < 0) raise(ErrorKind::NotAutomorphism, "lifted action does not preserve covering edges");
      if (pd.hyperplane_of_edge(e) != h) continue;
      if (pd[h].sector_of[gp] != pd[h].sector_of[p]) return {false, static_cast<int>(g), h};
    }
  }
  return {};
}

CollapseMap collapse(const HyperplaneDecomposition& d, const std::vector<int>& collapse_set) {
  for (const auto& hp : d.hyperplanes()) {
    if (hp.sectors.size() != 2) raise(ErrorKind::NotMedian, "collapse needs a median graph");
  }
  const Graph& g = d.graph();
  std::vector<bool> drop(d.count(), false);
  for (int h : collapse_set) {
    if (h < 0 || h >= d.count()) raise(ErrorKind::Validation, "unknown hyperplane id " + std::to_string(h));
    drop[h] = true;
  }
  CollapseMap cm;
  cm.source = g;
  for (int h = 0; h < d.count(); ++h) (drop[h] ? cm.collapsed : cm.kept).push_back(h);

  boost::disjoint_sets_with_storage<> ds(g.order());
  for (int v = 0; v < g.order(); ++v) ds.make_set(v);
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (drop[d.hyperplane_of_edge(static_cast<int>(e))]) ds.union_set(edges[e].first, edges[e].second);
  }
  std::vector<int> root_id(g.order(), -1);
  cm.projection.assign(g.order(), -1);
  int next = 0;
  for (int v = 0; v < g.order(); ++v) {
    const int r = static_cast<int>(ds.find_set(v));
    if (root_id[r] < 0) root_id[r] = next++;
    cm.projection[v] = root_id[r];
  }
  std::vector<Edge> quotient;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (drop[d.hyperplane_of_edge(static_cast<int>(e))]) continue;
    const int a = cm.projection[edges[e].first], b = cm.projection[edges[e].second];
    if (a == b) raise(ErrorKind::InternalInvariantViolation, "kept edge contracted to a point");
    quotient.emplace_back(a, b);
  }
  cm.target = Graph::from_edges_dedup(next, quotient);
  cm.fibres.assign(next, VertexSet(g.order()));
  for (int v = 0; v < g.order(); ++v) cm.fibres[cm.projection[v]].insert(v);
  return cm;
}

}  // namespace qmedian
