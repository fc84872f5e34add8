#include "qmedian/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "qmedian/error.hpp"

namespace qmedian {

Graph::Graph() : Graph(0) {}

Graph::Graph(int n) : data_(std::make_shared<Data>()) {
  data_->adjacency.resize(static_cast<std::size_t>(n));
}

Graph Graph::build(int n, std::vector<Edge> edges) {
  auto data = std::make_shared<Data>();
  data->adjacency.resize(static_cast<std::size_t>(n));
  std::sort(edges.begin(), edges.end());
  for (auto [u, v] : edges) {
    data->adjacency[static_cast<std::size_t>(u)].push_back(v);
    data->adjacency[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : data->adjacency) std::sort(nb.begin(), nb.end());
  data->edges = std::move(edges);
  return Graph(std::move(data));
}

const std::vector<VertexSet>& Graph::adjacency_bits() const {
  std::call_once(data_->adjacency_bits_once, [this] {
    const auto n = static_cast<std::size_t>(order());
    data_->adjacency_bits.assign(n, VertexSet(n));
    for (auto [u, v] : data_->edges) {
      data_->adjacency_bits[static_cast<std::size_t>(u)].insert(v);
      data_->adjacency_bits[static_cast<std::size_t>(v)].insert(u);
    }
  });
  return data_->adjacency_bits;
}

namespace {

std::vector<Edge> normalise_edges(int n, std::span<const Edge> edges, bool reject_duplicates) {
  if (n < 0) raise(ErrorKind::Validation, "negative vertex count");
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      raise(ErrorKind::Validation, "edge [" + std::to_string(u) + "," + std::to_string(v) + "] out of range");
    }
    if (u == v) raise(ErrorKind::Validation, "loop at vertex " + std::to_string(u));
    out.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(out.begin(), out.end());
  auto dup = std::adjacent_find(out.begin(), out.end());
  if (dup != out.end()) {
    if (reject_duplicates) {
      raise(ErrorKind::Validation,
            "duplicate edge [" + std::to_string(dup->first) + "," + std::to_string(dup->second) + "]");
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

}  // namespace

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  return build(n, normalise_edges(n, edges, true));
}

Graph Graph::from_edges_dedup(int n, std::span<const Edge> edges) {
  return build(n, normalise_edges(n, edges, false));
}

int Graph::edge_index(int u, int v) const {
  const Edge key{std::min(u, v), std::max(u, v)};
  auto it = std::lower_bound(data_->edges.begin(), data_->edges.end(), key);
  if (it == data_->edges.end() || *it != key) return -1;
  return static_cast<int>(it - data_->edges.begin());
}

const DistanceMatrix& Graph::distances() const {
  std::call_once(data_->distances_once, [this] {
    data_->distances = std::make_shared<const DistanceMatrix>(distance_matrix(*this));
  });
  return *data_->distances;
}

bool Graph::is_connected() const {
  if (order() == 0) return true;
  auto d = bfs_distances(*this, 0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x == DistanceMatrix::kInfinite; });
}

Graph Graph::induced(const VertexSet& keep, std::vector<int>* old_ids) const {
  std::vector<int> ids = keep.members();
  std::vector<int> new_id(static_cast<std::size_t>(order()), -1);
  for (std::size_t i = 0; i < ids.size(); ++i) new_id[static_cast<std::size_t>(ids[i])] = static_cast<int>(i);
  std::vector<Edge> es;
  for (auto [u, v] : edges()) {
    if (new_id[static_cast<std::size_t>(u)] >= 0 && new_id[static_cast<std::size_t>(v)] >= 0) {
      es.emplace_back(new_id[static_cast<std::size_t>(u)], new_id[static_cast<std::size_t>(v)]);
    }
  }
  if (old_ids) *old_ids = ids;
  return build(static_cast<int>(ids.size()), std::move(es));
}

std::vector<VertexSet> Graph::components(const std::vector<bool>* removed_edges) const {
  const int n = order();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<VertexSet> out;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back(static_cast<std::size_t>(n));
    std::deque<int> queue{s};
    comp[static_cast<std::size_t>(s)] = id;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      out.back().insert(u);
      for (int v : neighbours(u)) {
        if (comp[static_cast<std::size_t>(v)] >= 0) continue;
        if (removed_edges && (*removed_edges)[static_cast<std::size_t>(edge_index(u, v))]) continue;
        comp[static_cast<std::size_t>(v)] = id;
        queue.push_back(v);
      }
    }
  }
  return out;
}

std::vector<VertexSet> Graph::components_within(const VertexSet& allowed) const {
  const int n = order();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<VertexSet> out;
  allowed.for_each([&](int s) {
    if (seen[static_cast<std::size_t>(s)]) return;
    out.emplace_back(static_cast<std::size_t>(n));
    std::deque<int> queue{s};
    seen[static_cast<std::size_t>(s)] = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      out.back().insert(u);
      for (int v : neighbours(u)) {
        if (seen[static_cast<std::size_t>(v)] || !allowed.contains(v)) continue;
        seen[static_cast<std::size_t>(v)] = 1;
        queue.push_back(v);
      }
    }
  });
  return out;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
  VertexSet s(static_cast<std::size_t>(g.order()));
  s.insert(source);
  return bfs_distances(g, s);
}

std::vector<int> bfs_distances(const Graph& g, const VertexSet& sources, const VertexSet* allowed) {
  std::vector<int> dist(static_cast<std::size_t>(g.order()), DistanceMatrix::kInfinite);
  std::deque<int> queue;
  sources.for_each([&](int s) {
    if (allowed && !allowed->contains(s)) return;
    dist[static_cast<std::size_t>(s)] = 0;
    queue.push_back(s);
  });
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbours(u)) {
      if (dist[static_cast<std::size_t>(v)] != DistanceMatrix::kInfinite) continue;
      if (allowed && !allowed->contains(v)) continue;
      dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

DistanceMatrix distance_matrix(const Graph& g) {
  DistanceMatrix m(g.order());
  for (int s = 0; s < g.order(); ++s) {
    auto d = bfs_distances(g, s);
    for (int t = 0; t < g.order(); ++t) m.at(s, t) = d[static_cast<std::size_t>(t)];
  }
  return m;
}

VertexSet interval(const Graph& g, int a, int b) {
  const auto& d = g.distances();
  if (d(a, b) == DistanceMatrix::kInfinite) {
    raise(ErrorKind::DisconnectedPair, std::to_string(a) + " and " + std::to_string(b));
  }
  VertexSet out(static_cast<std::size_t>(g.order()));
  for (int c = 0; c < g.order(); ++c) {
    if (d(a, c) != DistanceMatrix::kInfinite && d(c, b) != DistanceMatrix::kInfinite &&
        d(a, c) + d(c, b) == d(a, b)) {
      out.insert(c);
    }
  }
  return out;
}

std::vector<int> geodesic(const Graph& g, int a, int b) {
  const auto& d = g.distances();
  if (d(a, b) == DistanceMatrix::kInfinite) {
    raise(ErrorKind::DisconnectedPair, std::to_string(a) + " and " + std::to_string(b));
  }
  std::vector<int> path{a};
  int cur = a;
  while (cur != b) {
    for (int v : g.neighbours(cur)) {
      if (d(v, b) + 1 == d(cur, b)) {
        cur = v;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

bool is_convex(const Graph& g, const VertexSet& s) {
  auto members = s.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (g.distance(members[i], members[j]) == DistanceMatrix::kInfinite) return false;
      if (!interval(g, members[i], members[j]).is_subset_of(s)) return false;
    }
  }
  return true;
}

std::string_view to_string(Pattern p) {
  switch (p) {
    case Pattern::K23: return "K23";
    case Pattern::K4minus: return "K4minus";
    case Pattern::Q3minus: return "Q3minus";
    case Pattern::House: return "House";
    case Pattern::C5: return "C5";
  }
  return "?";
}

Graph pattern_graph(Pattern p) {
  switch (p) {
    case Pattern::K23:
      return graphs::complete_bipartite(2, 3);
    case Pattern::K4minus: {
      const Edge e[] = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}};
      return Graph::from_edges(4, e);
    }
    case Pattern::Q3minus:
      return graphs::delete_vertex(graphs::hypercube(3), 7);
    case Pattern::House: {
      // square 0-1-2-3 with roof 4 on the edge {0,1}
      const Edge e[] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 4}};
      return Graph::from_edges(5, e);
    }
    case Pattern::C5:
      return graphs::cycle(5);
  }
  return Graph();
}

namespace {

// Pattern vertices ordered so that each one (after the first of its
// component) has an already-placed neighbour.
std::vector<int> search_order(const Graph& pattern) {
  const int k = pattern.order();
  std::vector<int> order;
  std::vector<char> placed(static_cast<std::size_t>(k), 0);
  while (static_cast<int>(order.size()) < k) {
    int best = -1, best_links = -1, best_deg = -1;
    for (int v = 0; v < k; ++v) {
      if (placed[static_cast<std::size_t>(v)]) continue;
      int links = 0;
      for (int u : pattern.neighbours(v)) links += placed[static_cast<std::size_t>(u)];
      if (links > best_links || (links == best_links && pattern.degree(v) > best_deg)) {
        best = v;
        best_links = links;
        best_deg = pattern.degree(v);
      }
    }
    placed[static_cast<std::size_t>(best)] = 1;
    order.push_back(best);
  }
  return order;
}

struct InducedSearch {
  const Graph& g;
  const Graph& pattern;
  std::size_t limit;
  std::vector<int> order;
  std::vector<int> image;
  std::vector<char> used;
  std::vector<std::vector<int>> out;

  bool consistent(int pv, int gv) const {
    for (int pu = 0; pu < pattern.order(); ++pu) {
      const int gu = image[static_cast<std::size_t>(pu)];
      if (gu < 0 || pu == pv) continue;
      if (pattern.adjacent(pu, pv) != g.adjacent(gu, gv)) return false;
    }
    return true;
  }

  void run(std::size_t depth) {
    if (limit && out.size() >= limit) return;
    if (depth == order.size()) {
      out.push_back(image);
      return;
    }
    const int pv = order[depth];
    int anchor = -1;
    for (int pu : pattern.neighbours(pv)) {
      if (image[static_cast<std::size_t>(pu)] >= 0) {
        anchor = image[static_cast<std::size_t>(pu)];
        break;
      }
    }
    auto attempt = [&](int gv) {
      if (used[static_cast<std::size_t>(gv)] || g.degree(gv) < pattern.degree(pv)) return;
      if (!consistent(pv, gv)) return;
      image[static_cast<std::size_t>(pv)] = gv;
      used[static_cast<std::size_t>(gv)] = 1;
      run(depth + 1);
      used[static_cast<std::size_t>(gv)] = 0;
      image[static_cast<std::size_t>(pv)] = -1;
    };
    if (anchor >= 0) {
      for (int gv : g.neighbours(anchor)) attempt(gv);
    } else {
      for (int gv = 0; gv < g.order(); ++gv) attempt(gv);
    }
  }
};

}  // namespace

std::vector<std::vector<int>> find_induced(const Graph& g, const Graph& pattern, std::size_t limit) {
  if (pattern.order() > g.order()) return {};
  InducedSearch search{g, pattern, limit, search_order(pattern),
                       std::vector<int>(static_cast<std::size_t>(pattern.order()), -1),
                       std::vector<char>(static_cast<std::size_t>(g.order()), 0), {}};
  search.run(0);
  return std::move(search.out);
}

std::vector<std::vector<int>> find_induced(const Graph& g, Pattern p, std::size_t limit) {
  return find_induced(g, pattern_graph(p), limit);
}

namespace {

// Colour refinement run on the disjoint union so colours are comparable.
std::vector<int> refine_colours(const Graph& a, const Graph& b) {
  const int na = a.order();
  const int n = na + b.order();
  auto nbrs = [&](int v) { return v < na ? a.neighbours(v) : b.neighbours(v - na); };
  std::vector<int> colour(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) colour[static_cast<std::size_t>(v)] = static_cast<int>(nbrs(v).size());
  for (int round = 0; round < n; ++round) {
    std::map<std::pair<int, std::vector<int>>, int> signature_ids;
    std::vector<int> next(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      std::vector<int> sig;
      for (int u : nbrs(v)) sig.push_back(colour[static_cast<std::size_t>(v < na ? u : u + na)]);
      std::sort(sig.begin(), sig.end());
      auto key = std::make_pair(colour[static_cast<std::size_t>(v)], std::move(sig));
      auto [it, inserted] = signature_ids.emplace(std::move(key), static_cast<int>(signature_ids.size()));
      next[static_cast<std::size_t>(v)] = it->second;
    }
    const bool stable = std::set<int>(next.begin(), next.end()).size() ==
                        std::set<int>(colour.begin(), colour.end()).size();
    colour = std::move(next);
    if (stable) break;
  }
  return colour;
}

struct IsoSearch {
  const Graph& a;
  const Graph& b;
  std::vector<int> ca, cb;
  std::vector<int> order;
  std::vector<int> map, used;

  bool run(std::size_t depth) {
    if (depth == order.size()) return true;
    const int v = order[depth];
    for (int w = 0; w < b.order(); ++w) {
      if (used[static_cast<std::size_t>(w)] || cb[static_cast<std::size_t>(w)] != ca[static_cast<std::size_t>(v)]) continue;
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i) {
        const int u = order[i];
        ok = a.adjacent(u, v) == b.adjacent(map[static_cast<std::size_t>(u)], w);
      }
      if (!ok) continue;
      map[static_cast<std::size_t>(v)] = w;
      used[static_cast<std::size_t>(w)] = 1;
      if (run(depth + 1)) return true;
      used[static_cast<std::size_t>(w)] = 0;
    }
    return false;
  }
};

}  // namespace

bool are_isomorphic(const Graph& a, const Graph& b, int vertex_cap) {
  if (a.order() > vertex_cap || b.order() > vertex_cap) {
    raise(ErrorKind::SizeLimitExceeded, "isomorphism oracle capped at " + std::to_string(vertex_cap) + " vertices");
  }
  if (a.order() != b.order() || a.size() != b.size()) return false;
  if (a.order() == 0) return true;
  auto colour = refine_colours(a, b);
  std::vector<int> ca(colour.begin(), colour.begin() + a.order());
  std::vector<int> cb(colour.begin() + a.order(), colour.end());
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  IsoSearch search{a, b, ca, cb, {}, std::vector<int>(static_cast<std::size_t>(a.order()), -1),
                   std::vector<int>(static_cast<std::size_t>(b.order()), 0)};
  // BFS order keeps each new vertex adjacent to placed ones where possible.
  search.order = search_order(a);
  return search.run(0);
}

namespace graphs {

Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

Graph complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return Graph::from_edges(a + b, e);
}

Graph star(int leaves) { return complete_bipartite(1, leaves); }

Graph grid(int rows, int cols) { return product(path(rows), path(cols)); }

Graph hypercube(int dim) {
  const int n = 1 << dim;
  std::vector<Edge> e;
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < dim; ++i)
      if (!(v & (1 << i))) e.emplace_back(v, v | (1 << i));
  return Graph::from_edges(n, e);
}

Graph petersen() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph::from_edges(10, e);
}

Graph product(const Graph& a, const Graph& b) {
  const int nb = b.order();
  std::vector<Edge> e;
  for (int i = 0; i < a.order(); ++i)
    for (auto [u, v] : b.edges()) e.emplace_back(i * nb + u, i * nb + v);
  for (auto [u, v] : a.edges())
    for (int j = 0; j < nb; ++j) e.emplace_back(u * nb + j, v * nb + j);
  return Graph::from_edges(a.order() * nb, e);
}

Graph hamming(std::span<const int> clique_sizes) {
  Graph g = complete(1);
  for (int k : clique_sizes) g = product(g, complete(k));
  return g;
}

Graph delete_vertex(const Graph& g, int v) {
  VertexSet keep = g.all_vertices();
  keep.erase(v);
  return g.induced(keep);
}

}  // namespace graphs

}  // namespace qmedian
