#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

#include <boost/pending/disjoint_sets.hpp>

#include "qmedian/error.hpp"
#include "qmedian/qm_structure.hpp"

namespace qmedian {

std::vector<std::array<int, 3>> triangles(const Graph& g) {
  std::vector<std::array<int, 3>> out;
  for (auto [a, b] : g.edges()) {
    (g.neighbourhood(a) & g.neighbourhood(b)).for_each([&](int c) {
      if (c > b) out.push_back({a, b, c});
    });
  }
  return out;
}

std::vector<std::array<int, 4>> induced_squares(const Graph& g) {
  // Canonical form: a is the smallest vertex, b < d for its two neighbours.
  std::vector<std::array<int, 4>> out;
  for (int a = 0; a < g.order(); ++a) {
    for (int b : g.neighbours(a)) {
      if (b < a) continue;
      for (int d : g.neighbours(a)) {
        if (d <= b || g.adjacent(b, d)) continue;
        (g.neighbourhood(b) & g.neighbourhood(d)).for_each([&](int c) {
          if (c > a && !g.adjacent(a, c)) out.push_back({a, b, c, d});
        });
      }
    }
  }
  return out;
}

std::vector<int> hyperplane_edge_classes(const Graph& g) {
  const std::size_t m = g.size();
  boost::disjoint_sets_with_storage<> ds(m);
  for (std::size_t e = 0; e < m; ++e) ds.make_set(e);
  for (const auto& t : triangles(g)) {
    const int e0 = g.edge_index(t[0], t[1]);
    ds.union_set(e0, g.edge_index(t[1], t[2]));
    ds.union_set(e0, g.edge_index(t[0], t[2]));
  }
  for (const auto& s : induced_squares(g)) {
    ds.union_set(g.edge_index(s[0], s[1]), g.edge_index(s[2], s[3]));
    ds.union_set(g.edge_index(s[1], s[2]), g.edge_index(s[3], s[0]));
  }
  std::vector<int> cls(m);
  std::map<std::size_t, int> ids;
  for (std::size_t e = 0; e < m; ++e) {
    auto [it, _] = ids.emplace(ds.find_set(e), static_cast<int>(ids.size()));
    cls[e] = it->second;
  }
  return cls;
}

namespace {

std::vector<VertexSet> components_avoiding(const Graph& g, const VertexSet& allowed,
                                           const std::vector<bool>& removed) {
  std::vector<VertexSet> out;
  VertexSet seen(g.order());
  allowed.for_each([&](int s) {
    if (seen.contains(s)) return;
    VertexSet comp(g.order());
    std::deque<int> queue{s};
    seen.insert(s);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      comp.insert(u);
      for (int v : g.neighbours(u)) {
        if (seen.contains(v) || !allowed.contains(v) || removed[g.edge_index(u, v)]) continue;
        seen.insert(v);
        queue.push_back(v);
      }
    }
    out.push_back(std::move(comp));
  });
  return out;
}

}  // namespace

HyperplaneDecomposition::HyperplaneDecomposition(Graph g, bool trusted) : graph_(std::move(g)) {
  if (!trusted && !recognize(graph_, {1}).is_quasi_median) {
    raise(ErrorKind::NotQuasiMedian, "hyperplane decomposition needs a quasi-median graph");
  }
  edge_class_ = hyperplane_edge_classes(graph_);
  const int k = edge_class_.empty() ? 0 : *std::max_element(edge_class_.begin(), edge_class_.end()) + 1;
  hyperplanes_.resize(k);
  for (std::size_t e = 0; e < edge_class_.size(); ++e) hyperplanes_[edge_class_[e]].edges.push_back(static_cast<int>(e));

  const auto edges = graph_.edges();
  for (auto& hp : hyperplanes_) {
    std::vector<bool> removed(edges.size(), false);
    hp.carrier = VertexSet(graph_.order());
    for (int e : hp.edges) {
      removed[e] = true;
      hp.carrier.insert(edges[e].first);
      hp.carrier.insert(edges[e].second);
    }
    hp.sectors = graph_.components(&removed);
    hp.sector_of.assign(graph_.order(), -1);
    for (std::size_t i = 0; i < hp.sectors.size(); ++i) {
      hp.sectors[i].for_each([&](int v) { hp.sector_of[v] = static_cast<int>(i); });
    }
    hp.fibres = components_avoiding(graph_, hp.carrier, removed);
  }

  transverse_.assign(k, std::vector<bool>(k, false));
  for (const auto& s : induced_squares(graph_)) {
    const int h1 = edge_class_[graph_.edge_index(s[0], s[1])];
    const int h2 = edge_class_[graph_.edge_index(s[1], s[2])];
    if (h1 != h2) transverse_[h1][h2] = transverse_[h2][h1] = true;
  }
}

std::vector<SectorId> HyperplaneDecomposition::all_sectors() const {
  std::vector<SectorId> out;
  for (int h = 0; h < count(); ++h) {
    for (int i = 0; i < static_cast<int>(hyperplanes_[h].sectors.size()); ++i) out.push_back({h, i});
  }
  return out;
}

int HyperplaneDecomposition::sector_count() const {
  int total = 0;
  for (const auto& hp : hyperplanes_) total += static_cast<int>(hp.sectors.size());
  return total;
}

std::vector<int> HyperplaneDecomposition::separating(int x, int y) const {
  std::vector<int> out;
  for (int h = 0; h < count(); ++h) {
    if (separates(h, x, y)) out.push_back(h);
  }
  return out;
}

int HyperplaneDecomposition::sector_containing(int h, const VertexSet& s) const {
  const int v = s.first();
  if (v < 0) return -1;
  const int i = hyperplanes_[h].sector_of[v];
  return s.is_subset_of(hyperplanes_[h].sectors[i]) ? i : -1;
}

std::vector<int> HyperplaneDecomposition::crossing(const VertexSet& s) const {
  std::vector<int> out;
  if (s.empty()) return out;
  for (int h = 0; h < count(); ++h) {
    if (sector_containing(h, s) < 0) out.push_back(h);
  }
  return out;
}

std::vector<int> HyperplaneDecomposition::separating_sets(const VertexSet& a, const VertexSet& b) const {
  std::vector<int> out;
  if (a.empty() || b.empty()) return out;
  for (int h = 0; h < count(); ++h) {
    const int sa = sector_containing(h, a);
    const int sb = sector_containing(h, b);
    if (sa >= 0 && sb >= 0 && sa != sb) out.push_back(h);
  }
  return out;
}

HyperplaneDecomposition hyperplanes(const Graph& g) { return HyperplaneDecomposition(g); }

std::optional<int> gate_of(const Graph& g, const VertexSet& y, int x) {
  if (y.empty()) raise(ErrorKind::EmptySet, "gate target is empty");
  const auto& d = g.distances();
  int p = -1;
  y.for_each([&](int q) {
    if (p < 0 || d(x, q) < d(x, p)) p = q;
  });
  if (d(x, p) == DistanceMatrix::kInfinite) return std::nullopt;
  bool ok = true;
  y.for_each([&](int q) {
    if (ok && d(x, q) != d(x, p) + d(p, q)) ok = false;
  });
  if (!ok) return std::nullopt;
  return p;
}

bool is_gated(const Graph& g, const VertexSet& y) {
  for (int x = 0; x < g.order(); ++x) {
    if (!gate_of(g, y, x)) return false;
  }
  return true;
}

GatedSet make_gated(const Graph& g, const VertexSet& y) {
  GatedSet out{y, std::vector<int>(g.order(), -1)};
  for (int x = 0; x < g.order(); ++x) {
    auto p = gate_of(g, y, x);
    if (!p) raise(ErrorKind::InternalInvariantViolation, "set has no gate for vertex " + std::to_string(x));
    out.gate[x] = *p;
  }
  return out;
}

GatedSet gated_hull(const HyperplaneDecomposition& d, const VertexSet& s) {
  if (s.empty()) raise(ErrorKind::EmptySet, "gated hull of the empty set");
  VertexSet hull = d.graph().all_vertices();
  for (int h = 0; h < d.count(); ++h) {
    const int i = d.sector_containing(h, s);
    if (i >= 0) hull &= d[h].sectors[i];
  }
  return make_gated(d.graph(), hull);
}

VertexSet convex_hull(const HyperplaneDecomposition& d, const VertexSet& s) {
  if (s.empty()) raise(ErrorKind::EmptySet, "convex hull of the empty set");
  VertexSet hull = d.graph().all_vertices();
  for (const auto& hp : d.hyperplanes()) {
    for (const auto& sec : hp.sectors) {
      if (!sec.intersects(s)) hull -= sec;
    }
  }
  return hull;
}

VertexSet clique_at(const HyperplaneDecomposition& d, int x, int h) {
  const Graph& g = d.graph();
  VertexSet c(g.order());
  c.insert(x);
  for (int y : g.neighbours(x)) {
    if (d.hyperplane_of_edge(x, y) == h) c.insert(y);
  }
  return c;
}

bool is_product_of_cliques(const HyperplaneDecomposition& d, const VertexSet& vertices,
                           const std::vector<VertexSet>& factors, const std::vector<int>& hps) {
  if (factors.size() != hps.size() || vertices.empty()) return false;
  const Graph& g = d.graph();
  std::size_t expected = 1;
  for (const auto& f : factors) expected *= f.count();
  if (vertices.count() != expected) return false;

  for (std::size_t i = 0; i < hps.size(); ++i) {
    for (std::size_t j = i + 1; j < hps.size(); ++j) {
      if (!d.transverse(hps[i], hps[j])) return false;
    }
  }
  auto crossing = d.crossing(vertices);
  auto sorted = hps;
  std::sort(sorted.begin(), sorted.end());
  if (crossing != sorted) return false;

  // Coordinates: the sector of each factor hyperplane. Each factor clique
  // meets every sector of its hyperplane at most once.
  std::vector<std::map<int, int>> sector_to_slot(hps.size());
  for (std::size_t i = 0; i < hps.size(); ++i) {
    const auto& hp = d[hps[i]];
    int slot = 0;
    bool ok = true;
    factors[i].for_each([&](int v) {
      if (!sector_to_slot[i].emplace(hp.sector_of[v], slot++).second) ok = false;
    });
    if (!ok) return false;
  }
  std::map<std::vector<int>, int> seen;
  std::vector<std::vector<int>> coords(g.order());
  bool ok = true;
  vertices.for_each([&](int v) {
    if (!ok) return;
    std::vector<int> c(hps.size());
    for (std::size_t i = 0; i < hps.size(); ++i) {
      auto it = sector_to_slot[i].find(d[hps[i]].sector_of[v]);
      if (it == sector_to_slot[i].end()) {
        ok = false;
        return;
      }
      c[i] = it->second;
    }
    if (!seen.emplace(c, v).second) ok = false;
    coords[v] = std::move(c);
  });
  if (!ok) return false;

  const auto members = vertices.members();
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const auto& ca = coords[members[a]];
      const auto& cb = coords[members[b]];
      int diff = 0;
      for (std::size_t i = 0; i < ca.size(); ++i) diff += ca[i] != cb[i];
      if (g.adjacent(members[a], members[b]) != (diff == 1)) return false;
    }
  }
  return true;
}

namespace {

struct PrismSearch {
  const HyperplaneDecomposition& d;
  int base;
  std::vector<int> candidates;
  std::vector<VertexSet> cliques;  // clique_at(base, candidates[i])
  std::vector<int> chosen;
  std::unordered_set<VertexSet, VertexSetHash>& seen;
  std::vector<Prism>& out;

  void emit() {
    VertexSet span(d.graph().order());
    span.insert(base);
    for (int i : chosen) span |= cliques[i];
    VertexSet hull = gated_hull(d, span).vertices;
    if (!seen.insert(hull).second) return;
    Prism p;
    p.vertices = hull;
    const int b = hull.first();
    for (int i : chosen) {
      p.hyperplanes.push_back(candidates[i]);
    }
    std::sort(p.hyperplanes.begin(), p.hyperplanes.end());
    for (int h : p.hyperplanes) p.factors.push_back(clique_at(d, b, h));
    if (!is_product_of_cliques(d, p.vertices, p.factors, p.hyperplanes)) {
      raise(ErrorKind::InternalInvariantViolation, "prism at vertex " + std::to_string(base) + " is not a product");
    }
    out.push_back(std::move(p));
  }

  void run(std::size_t next) {
    emit();
    for (std::size_t i = next; i < candidates.size(); ++i) {
      bool ok = true;
      for (int j : chosen) ok = ok && d.transverse(candidates[i], candidates[j]);
      if (!ok) continue;
      chosen.push_back(static_cast<int>(i));
      run(i + 1);
      chosen.pop_back();
    }
  }
};

}  // namespace

std::vector<Prism> enumerate_prisms(const HyperplaneDecomposition& d) {
  const Graph& g = d.graph();
  std::unordered_set<VertexSet, VertexSetHash> seen;
  std::vector<Prism> out;
  for (int x = 0; x < g.order(); ++x) {
    std::vector<int> hs;
    for (int y : g.neighbours(x)) hs.push_back(d.hyperplane_of_edge(x, y));
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    std::vector<VertexSet> cl;
    for (int h : hs) cl.push_back(clique_at(d, x, h));
    PrismSearch search{d, x, hs, cl, {}, seen, out};
    search.run(0);
  }
  std::sort(out.begin(), out.end(), [](const Prism& a, const Prism& b) {
    if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
    return a.vertices < b.vertices;
  });
  return out;
}

}  // namespace qmedian
