#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmedian/graph.hpp"
#include "qmedian/median_derivatives.hpp"
#include "qmedian/qm_structure.hpp"

namespace qmedian {

using Permutation = std::vector<int>;

inline constexpr std::size_t kDefaultClosureCap = 10'000;

struct Closure {
  std::vector<Permutation> elements;  // identity first
  bool complete = true;               // false when the cap cut the search
};

// Throws Validation for malformed permutations.
Closure group_closure(int n, const std::vector<Permutation>& generators, std::size_t cap = kDefaultClosureCap);

class GraphAction {
 public:
  // Throws Validation for malformed permutations and NotAutomorphism (with a
  // witness edge) when a generator breaks adjacency.
  GraphAction(Graph graph, std::vector<Permutation> generators, std::size_t cap = kDefaultClosureCap);

  const Graph& graph() const { return graph_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const Closure& closure() const { return closure_; }

 private:
  Graph graph_;
  std::vector<Permutation> generators_;
  Closure closure_;
};

// Orbits are always bounded on a finite graph; the report says so instead
// of carrying a meaningful flag.
inline constexpr const char* kFiniteScaleDisclaimer =
    "finite graph: every orbit is bounded, so unbounded-orbit conditions are not decidable here";

struct ActionReport {
  std::vector<std::vector<int>> hyperplane_orbits;
  bool hyperplane_transitive = false;
  bool convex_minimal = false;
  bool strongly_convex_minimal = false;
  bool has_hyperplane_inversion = false;
  int inversion_element = -1;
  int inversion_hyperplane = -1;
  bool orbits_bounded = true;
  std::string disclaimer = kFiniteScaleDisclaimer;
  std::vector<int> q;  // sectors per hyperplane
  std::vector<int> p;  // stabiliser orbits of sectors per hyperplane
  std::size_t closure_size = 0;
  bool closure_complete = true;
};

// Image of each hyperplane / sector under a permutation.
std::vector<int> act_on_hyperplanes(const HyperplaneDecomposition& d, const Permutation& g);
SectorId act_on_sector(const HyperplaneDecomposition& d, const Permutation& g, SectorId s);

// Throws NotQuasiMedian for non-quasi-median graphs.
ActionReport analyze_action(const GraphAction& action);
ActionReport analyze_action(const GraphAction& action, const HyperplaneDecomposition& d);

struct CoreResult {
  int base = -1;
  VertexSet core;
  int sector_orbits = 0;
  bool restricted_convex_minimal = false;
};

CoreResult convex_minimal_core(const GraphAction& action);

struct MonohypReport {
  bool strongly_convex_minimal = false;      // criterion on X
  bool lifted_convex_minimal = false;        // computed on the graph of prisms
  bool agree = false;
  bool lifted_inversion_free = true;
  std::string disclaimer = kFiniteScaleDisclaimer;
};

// Throws PrerequisiteFailed unless the action is hyperplane-transitive and
// convex-minimal.
MonohypReport monohyp_prism_check(const GraphAction& action);

// Lifted action on the graph of prisms.
GraphAction lift_action(const GraphAction& action, const PrismGraph& pg);

// Index of a prism stabilised by the whole closure, if any.
std::optional<int> stabilised_prism(const GraphAction& action, const PrismGraph& pg);
std::optional<int> fixed_vertex(const GraphAction& action);

}  // namespace qmedian
