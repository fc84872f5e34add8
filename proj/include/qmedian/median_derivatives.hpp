#pragma once

#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qmedian/graph.hpp"
#include "qmedian/qm_structure.hpp"

namespace qmedian {

// ---------------------------------------------------------------------------
// Polytopes

struct Polytope {
  VertexSet vertices;
  std::vector<int> hyperplanes;  // crossing hyperplanes, sorted
  const HyperplaneDecomposition* source = nullptr;
  int h() const { return static_cast<int>(hyperplanes.size()); }
};

// `vertices` must be gated; throws InternalInvariantViolation otherwise.
Polytope make_polytope(const HyperplaneDecomposition& d, const VertexSet& vertices);
Polytope polytope_hull(const HyperplaneDecomposition& d, const VertexSet& s);

struct PolytopeGraph {
  std::vector<Polytope> nodes;
  Graph graph;                   // covering graph on node indices
  std::vector<Edge> covers;      // (lower, upper), aligned with graph.edges()
  std::unordered_map<VertexSet, int, VertexSetHash> index;

  int find(const VertexSet& s) const {
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
  }
};

inline constexpr int kDefaultPolytopeCap = 10;

// All gated hulls of vertex subsets. Throws SizeLimitExceeded above `cap`.
std::vector<Polytope> enumerate_polytopes(const HyperplaneDecomposition& d, int cap = kDefaultPolytopeCap);
PolytopeGraph build_polytope_graph(const HyperplaneDecomposition& d, int cap = kDefaultPolytopeCap);

struct PolytopeDistanceTerms {
  int a_minus_b = 0;   // crossing A, not B
  int separating = 0;  // separating A from B
  int b_minus_a = 0;
  int h_union = 0;     // crossing A ∪ B
  int first_form() const { return a_minus_b + 2 * separating + b_minus_a; }
  int second_form(int ha, int hb) const { return 2 * h_union - ha - hb; }
};

PolytopeDistanceTerms polytope_distance_terms(const Polytope& a, const Polytope& b);
// Throws MixedGraphs, or InternalInvariantViolation if the two forms differ.
int polytope_distance(const Polytope& a, const Polytope& b);

// Throws MixedGraphs, or InternalInvariantViolation on an empty result.
Polytope polytope_median(const Polytope& a, const Polytope& b, const Polytope& c);

// Sector test for C lying on a geodesic from A to B.
bool polytope_between(const Polytope& a, const Polytope& b, const Polytope& c);

// ---------------------------------------------------------------------------
// Graph of prisms

struct PrismEdge {
  int lower = -1;
  int upper = -1;
  SectorId label;
};

struct PrismGraph {
  std::vector<Prism> nodes;
  Graph graph;
  std::vector<PrismEdge> covers;  // aligned with graph.edges()
  std::unordered_map<VertexSet, int, VertexSetHash> index;
  std::vector<int> vertex_node;   // node of the singleton prism {x}

  int find(const VertexSet& s) const {
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
  }
};

PrismGraph build_prism_graph(const HyperplaneDecomposition& d);

struct PrismHyperplaneBijection {
  std::shared_ptr<const HyperplaneDecomposition> prism_decomposition;
  std::map<SectorId, int> sector_to_hyperplane;
  std::vector<SectorId> hyperplane_to_sector;
  // For each prism-graph hyperplane, the index of the halfspace made of the
  // prisms inside its sector.
  std::vector<int> inside_halfspace;
  bool halfspaces_match = false;
};

// Throws InternalInvariantViolation on label mixing or a non-bijective map.
PrismHyperplaneBijection prism_hyperplane_bijection(const HyperplaneDecomposition& d, const PrismGraph& pg);

// Sectors containing exactly one of x, y.
std::vector<SectorId> separating_sectors(const HyperplaneDecomposition& d, int x, int y);

// Prism-graph hyperplanes separating {x} and {y}, translated into sectors.
std::vector<SectorId> separating_hyperplanes_in_prism_graph(const PrismGraph& pg,
                                                            const PrismHyperplaneBijection& b, int x, int y);

// Permutation of prism nodes induced by a vertex permutation. Throws
// NotAutomorphism if some prism image is not a prism.
std::vector<int> lift_to_prisms(const PrismGraph& pg, const std::vector<int>& perm);

struct InversionReport {
  bool no_inversion = true;
  int element = -1;      // index into the element list
  int hyperplane = -1;   // prism-graph hyperplane
};

// Checks every permutation of X (as lifted to the graph of prisms) for a
// hyperplane it stabilises while exchanging its two halfspaces.
InversionReport no_hyperplane_inversion_check(const PrismGraph& pg, const PrismHyperplaneBijection& b,
                                              const std::vector<std::vector<int>>& elements);

// ---------------------------------------------------------------------------
// Hyperplane collapses

struct CollapseMap {
  Graph source;
  std::vector<int> kept;       // hyperplane ids not collapsed
  std::vector<int> collapsed;
  std::vector<int> projection;
  Graph target;
  std::vector<VertexSet> fibres;  // preimages of target vertices
};

// Throws NotMedian, or Validation on unknown hyperplane ids.
CollapseMap collapse(const HyperplaneDecomposition& d, const std::vector<int>& collapse_set);

}  // namespace qmedian
