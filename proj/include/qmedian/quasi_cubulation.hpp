#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmedian/graph.hpp"
#include "qmedian/qm_structure.hpp"
#include "qmedian/vertex_set.hpp"

namespace qmedian {

using Character = std::vector<VertexSet>;  // clades, sorted

// A finite set 0..points-1 with a family of partitions. Construction
// validates every character and drops repeated ones, keeping the first.
class CharacterSpace {
 public:
  CharacterSpace() = default;
  // Throws Validation on empty, overlapping, non-covering or single-clade
  // characters and on out-of-range ids.
  CharacterSpace(int points, const std::vector<std::vector<std::vector<int>>>& characters);
  CharacterSpace(int points, std::vector<Character> characters);

  int points() const { return points_; }
  int size() const { return static_cast<int>(characters_.size()); }
  const Character& operator[](int i) const { return characters_[i]; }
  const std::vector<Character>& characters() const { return characters_; }
  int clade_count(int i) const { return static_cast<int>(characters_[i].size()); }
  // Index of the clade of character i containing point x.
  int clade_of(int i, int x) const { return clade_of_[i][x]; }

  // Optional external names for points (CSV input); empty when absent.
  std::vector<std::string> labels;

 private:
  void index();
  int points_ = 0;
  std::vector<Character> characters_;
  std::vector<std::vector<int>> clade_of_;
};

using Selector = std::vector<int>;  // clade index per character

enum class Flavor { Coherent, Buneman, Relation, All };

std::string_view to_string(Flavor f);
// Throws Validation.
Flavor parse_flavor(std::string_view s);

std::vector<VertexSet> extensions(const CharacterSpace& space, int character, int clade);

// Pairwise admissibility of clade a of character i together with clade b of
// character j (i != j) under the flavour.
bool compatible(const CharacterSpace& space, Flavor flavor, int i, int a, int j, int b);

struct CoherenceResult {
  bool ok = true;
  int first = -1;   // violating character pair
  int second = -1;
};

CoherenceResult is_coherent(const CharacterSpace& space, const Selector& sel, Flavor flavor);

Selector pointed_selector(const CharacterSpace& space, int x);

int disagreements(const Selector& a, const Selector& b);

struct SelectorGraph {
  Flavor flavor = Flavor::Coherent;
  std::vector<Selector> nodes;  // sorted lexicographically
  Graph graph;
  std::vector<int> pointed;     // node of the pointed selector of each point, or -1
  std::map<Selector, int> index;

  int find(const Selector& s) const {
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
  }
};

inline constexpr std::size_t kDefaultSelectorCap = 200'000;

// Throws SizeLimitExceeded once more than `cap` selectors are admitted.
SelectorGraph build_selector_graph(const CharacterSpace& space, Flavor flavor,
                                   std::size_t cap = kDefaultSelectorCap);

// Restriction to the component holding the pointed selectors. Throws
// PointedSplit if they lie in several components.
SelectorGraph pointed_component(const SelectorGraph& sg);

struct CharacterHyperplaneMap {
  HyperplaneDecomposition decomposition;
  std::vector<int> hyperplane_character;   // character labelling each hyperplane
  std::map<int, int> character_hyperplane; // characters crossing the component
  // sector_clade[h][s] = clade chosen by every selector in sector s of h.
  std::vector<std::vector<int>> sector_clade;
};

// Throws InternalInvariantViolation on label mixing or sector mismatch, and
// NotQuasiMedian if the component is not quasi-median.
CharacterHyperplaneMap character_hyperplane_map(const CharacterSpace& space, const SelectorGraph& component);

// One character per hyperplane: its sector partition.
CharacterSpace sector_characters(const HyperplaneDecomposition& d);

enum class WitnessProperty { BunemanDisconnected, RelationDisconnected, RelationNotIsometric, BunemanSmallerQm };

std::string_view to_string(WitnessProperty p);
// Throws Validation.
WitnessProperty parse_witness_property(std::string_view s);

struct WitnessBounds {
  int max_points = 8;
  int max_characters = 4;
  int max_clades = 4;
  std::size_t max_candidates = 5'000'000;  // spaces examined before giving up
};

struct WitnessResult {
  CharacterSpace space;
  std::size_t examined = 0;
};

bool has_property(const CharacterSpace& space, WitnessProperty p);

// Throws NotFound when the bounded search is exhausted.
WitnessResult witness_search(WitnessProperty p, const WitnessBounds& bounds = {});

}  // namespace qmedian
