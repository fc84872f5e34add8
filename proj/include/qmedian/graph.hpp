#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qmedian/vertex_set.hpp"

namespace qmedian {

using Edge = std::pair<int, int>;

// Row-major table of hop distances. Unreachable pairs hold kInfinite.
class DistanceMatrix {
 public:
  static constexpr int kInfinite = std::numeric_limits<int>::max();

  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, kInfinite) {}

  int order() const { return n_; }
  int operator()(int u, int v) const { return d_[index(u, v)]; }
  int& at(int u, int v) { return d_[index(u, v)]; }

 private:
  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }
  int n_ = 0;
  std::vector<int> d_;
};

// Finite simple undirected graph on vertices 0..n-1. Immutable once built;
// copies share storage, and the distance table is computed on first use.
class Graph {
 public:
  Graph();
  explicit Graph(int n);

  // Rejects loops, duplicate edges (in either orientation) and ids out of
  // range with ErrorKind::Validation.
  static Graph from_edges(int n, std::span<const Edge> edges);
  // Same, but silently drops duplicates. Used when quotienting.
  static Graph from_edges_dedup(int n, std::span<const Edge> edges);

  int order() const { return static_cast<int>(data_->adjacency.size()); }
  std::size_t size() const { return data_->edges.size(); }

  std::span<const int> neighbours(int v) const { return data_->adjacency[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(neighbours(v).size()); }
  bool adjacent(int u, int v) const {
    const auto& nb = data_->adjacency[static_cast<std::size_t>(u)];
    return std::binary_search(nb.begin(), nb.end(), v);
  }
  // Neighbourhood bitsets are built for all vertices on first use.
  const VertexSet& neighbourhood(int v) const { return adjacency_bits()[static_cast<std::size_t>(v)]; }

  // Edges with u < v, sorted lexicographically.
  std::span<const Edge> edges() const { return data_->edges; }
  // Index into edges(), or -1.
  int edge_index(int u, int v) const;

  const DistanceMatrix& distances() const;
  int distance(int u, int v) const { return distances()(u, v); }
  bool is_connected() const;

  // Subgraph induced by `keep`, vertices renumbered in increasing order.
  // `old_ids` (if given) receives the original id of each new vertex.
  Graph induced(const VertexSet& keep, std::vector<int>* old_ids = nullptr) const;

  // Components of the graph with the given edges ignored.
  std::vector<VertexSet> components(const std::vector<bool>* removed_edges = nullptr) const;
  std::vector<VertexSet> components_within(const VertexSet& allowed) const;

  VertexSet all_vertices() const { return VertexSet::full(static_cast<std::size_t>(order())); }

 private:
  struct Data {
    std::vector<std::vector<int>> adjacency;
    std::vector<VertexSet> adjacency_bits;
    std::once_flag adjacency_bits_once;
    std::vector<Edge> edges;
    std::shared_ptr<const DistanceMatrix> distances;
    std::once_flag distances_once;
  };
  static Graph build(int n, std::vector<Edge> edges);
  const std::vector<VertexSet>& adjacency_bits() const;
  explicit Graph(std::shared_ptr<Data> data) : data_(std::move(data)) {}

  std::shared_ptr<Data> data_;
};

// Single-source BFS; unreachable vertices get DistanceMatrix::kInfinite.
std::vector<int> bfs_distances(const Graph& g, int source);
// Multi-source BFS restricted to `allowed` (all vertices when null).
std::vector<int> bfs_distances(const Graph& g, const VertexSet& sources, const VertexSet* allowed = nullptr);

DistanceMatrix distance_matrix(const Graph& g);

// {c : d(a,b) = d(a,c) + d(c,b)}. Throws DisconnectedPair.
VertexSet interval(const Graph& g, int a, int b);

// One BFS geodesic from a to b (vertex sequence). Throws DisconnectedPair.
std::vector<int> geodesic(const Graph& g, int a, int b);

bool is_convex(const Graph& g, const VertexSet& s);

enum class Pattern { K23, K4minus, Q3minus, House, C5 };

std::string_view to_string(Pattern p);
Graph pattern_graph(Pattern p);

// Injective maps pattern-vertex -> graph-vertex whose image induces exactly
// the pattern. No automorphism quotient. `limit` = 0 means unlimited.
std::vector<std::vector<int>> find_induced(const Graph& g, const Graph& pattern, std::size_t limit = 0);
std::vector<std::vector<int>> find_induced(const Graph& g, Pattern p, std::size_t limit = 0);

inline constexpr int kDefaultIsomorphismCap = 64;

// Throws SizeLimitExceeded if either graph exceeds `vertex_cap` vertices.
bool are_isomorphic(const Graph& a, const Graph& b, int vertex_cap = kDefaultIsomorphismCap);

namespace graphs {

Graph path(int n);
Graph cycle(int n);
Graph complete(int n);
Graph complete_bipartite(int a, int b);
Graph star(int leaves);
Graph grid(int rows, int cols);
Graph hypercube(int dim);
Graph petersen();
// Cartesian product; vertex (i, j) gets id i * b.order() + j.
Graph product(const Graph& a, const Graph& b);
Graph hamming(std::span<const int> clique_sizes);
Graph delete_vertex(const Graph& g, int v);

}  // namespace graphs

}  // namespace qmedian
