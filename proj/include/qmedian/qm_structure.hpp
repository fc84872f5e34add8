#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "qmedian/graph.hpp"
#include "qmedian/vertex_set.hpp"

namespace qmedian {

// ---------------------------------------------------------------------------
// Recognition

struct RecognitionOptions {
  // Witness lists are truncated at this length; flags are always exact.
  std::size_t max_witnesses = 64;
};

struct RecognitionReport {
  bool is_weakly_modular = false;
  // (o, x, y) with x ~ y, d(o,x) = d(o,y) and no common neighbour one step
  // closer to o.
  std::vector<std::vector<int>> triangle_violations;
  // (o, x, y, z) with z a common neighbour of x, y one step further from o
  // and no common neighbour of x, y two steps closer than z.
  std::vector<std::vector<int>> quadrangle_violations;
  std::vector<std::vector<int>> forbidden_k23;
  std::vector<std::vector<int>> forbidden_k4minus;
  bool is_quasi_median = false;
  bool is_median = false;
  bool triangle_free = false;
};

// Throws Disconnected.
RecognitionReport recognize(const Graph& g, const RecognitionOptions& options = {});

bool is_quasi_median(const Graph& g);
bool is_median(const Graph& g);

struct LocalConditionsReport {
  bool forbidden_free = false;
  bool cube_condition = false;
  bool prism_condition = false;
  // First rational homology of the square-triangle completion vanishes. A
  // necessary condition for simple connectivity, never a proof of it.
  bool h1_trivial = false;
  int h1_rank = 0;
};

LocalConditionsReport check_local_conditions(const Graph& g);

// ---------------------------------------------------------------------------
// Hyperplanes

struct SectorId {
  int hyperplane = -1;
  int index = -1;
  friend auto operator<=>(const SectorId&, const SectorId&) = default;
};

struct Hyperplane {
  std::vector<int> edges;  // indices into Graph::edges()
  std::vector<VertexSet> sectors;
  VertexSet carrier;
  std::vector<VertexSet> fibres;
  // sector_of[v] = index into sectors of the sector containing v.
  std::vector<int> sector_of;
};

class HyperplaneDecomposition {
 public:
  // Throws NotQuasiMedian (after running recognition) unless `trusted`.
  explicit HyperplaneDecomposition(Graph g, bool trusted = false);

  const Graph& graph() const { return graph_; }
  int count() const { return static_cast<int>(hyperplanes_.size()); }
  const Hyperplane& operator[](int h) const { return hyperplanes_[static_cast<std::size_t>(h)]; }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }

  int hyperplane_of_edge(int edge_index) const { return edge_class_[static_cast<std::size_t>(edge_index)]; }
  int hyperplane_of_edge(int u, int v) const { return hyperplane_of_edge(graph_.edge_index(u, v)); }
  const std::vector<int>& edge_classes() const { return edge_class_; }

  bool transverse(int h1, int h2) const {
    return transverse_[static_cast<std::size_t>(h1)][static_cast<std::size_t>(h2)];
  }
  bool separates(int h, int x, int y) const {
    const auto& s = hyperplanes_[static_cast<std::size_t>(h)].sector_of;
    return s[static_cast<std::size_t>(x)] != s[static_cast<std::size_t>(y)];
  }
  const VertexSet& sector(SectorId id) const {
    return hyperplanes_[static_cast<std::size_t>(id.hyperplane)].sectors[static_cast<std::size_t>(id.index)];
  }
  std::vector<SectorId> all_sectors() const;
  int sector_count() const;

  std::vector<int> separating(int x, int y) const;
  // Hyperplanes separating two vertices of s (the hyperplanes crossing s).
  std::vector<int> crossing(const VertexSet& s) const;
  // Hyperplanes with all of a in one sector and all of b in another.
  std::vector<int> separating_sets(const VertexSet& a, const VertexSet& b) const;
  // Sector of h containing all of s, or -1 if h crosses s.
  int sector_containing(int h, const VertexSet& s) const;

 private:
  Graph graph_;
  std::vector<int> edge_class_;
  std::vector<Hyperplane> hyperplanes_;
  std::vector<std::vector<bool>> transverse_;
};

// Union-find closure of the edge relation "same triangle or opposite in an
// induced 4-cycle". Works on any graph; only meaningful on quasi-median ones.
std::vector<int> hyperplane_edge_classes(const Graph& g);

// Induced 4-cycles as (a, b, c, d) in cyclic order, each listed once.
std::vector<std::array<int, 4>> induced_squares(const Graph& g);
std::vector<std::array<int, 3>> triangles(const Graph& g);

HyperplaneDecomposition hyperplanes(const Graph& g);

// ---------------------------------------------------------------------------
// Gated sets, hulls, prisms

struct GatedSet {
  VertexSet vertices;
  std::vector<int> gate;  // gate[x] for every vertex x of the graph
};

// Gate of x in y, or nullopt when the nearest point is not a gate.
// Throws EmptySet.
std::optional<int> gate_of(const Graph& g, const VertexSet& y, int x);
bool is_gated(const Graph& g, const VertexSet& y);
// Gate map of y. Throws InternalInvariantViolation if y is not gated.
GatedSet make_gated(const Graph& g, const VertexSet& y);

// Intersection of the sectors containing s. Throws EmptySet.
GatedSet gated_hull(const HyperplaneDecomposition& d, const VertexSet& s);
// Intersection of the cosectors containing s. Throws EmptySet.
VertexSet convex_hull(const HyperplaneDecomposition& d, const VertexSet& s);

struct Prism {
  VertexSet vertices;
  std::vector<VertexSet> factors;  // cliques through a base vertex
  std::vector<int> hyperplanes;    // sorted; hyperplanes[i] contains factors[i]
  int dimension() const { return static_cast<int>(hyperplanes.size()); }
};

// The clique through x whose edges lie in hyperplane h (x plus its
// h-neighbours).
VertexSet clique_at(const HyperplaneDecomposition& d, int x, int h);

// Checks the product structure of `vertices` against the given factors.
bool is_product_of_cliques(const HyperplaneDecomposition& d, const VertexSet& vertices,
                           const std::vector<VertexSet>& factors, const std::vector<int>& hyperplanes);

// All prisms, deduplicated by vertex set, sorted by (dimension, vertices).
std::vector<Prism> enumerate_prisms(const HyperplaneDecomposition& d);

}  // namespace qmedian
