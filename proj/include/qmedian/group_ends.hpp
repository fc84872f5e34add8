#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/functional/hash.hpp>

#include "qmedian/graph.hpp"
#include "qmedian/quasi_cubulation.hpp"

namespace qmedian {

// Normal form of a group element; the encoding is private to each model.
using Element = std::vector<int>;
// Letters are +g / -g for generator index g (1-based).
using Word = std::vector<int>;

struct ElementHash {
  std::size_t operator()(const Element& e) const { return boost::hash_range(e.begin(), e.end()); }
};

class GroupModel {
 public:
  virtual ~GroupModel() = default;

  virtual std::string kind() const = 0;
  virtual int generator_count() const = 0;
  virtual Element identity() const = 0;
  virtual Element multiply_letter(const Element& x, int letter) const = 0;
  // Word length with respect to the symmetric generating set.
  virtual int length(const Element& x) const = 0;
  // Some word representing x.
  virtual Word word(const Element& x) const = 0;

  Element multiply(const Element& x, const Element& y) const;
  Element evaluate(const Word& w) const;
  Element inverse(const Element& x) const;
  std::string format(const Element& x) const;
};

std::unique_ptr<GroupModel> make_free_abelian(int rank);
std::unique_ptr<GroupModel> make_free(int rank);
std::unique_ptr<GroupModel> make_direct_product(std::vector<std::unique_ptr<GroupModel>> factors);
std::unique_ptr<GroupModel> make_free_product(std::vector<std::unique_ptr<GroupModel>> factors);

// Finite group from a complete right-multiplication table: vertex ids are
// elements, right[v][g] is v times generator g+1. Throws Validation if the
// table is incomplete or not a permutation per generator.
std::unique_ptr<GroupModel> make_table(std::vector<std::vector<int>> right, int identity,
                                       std::vector<std::string> generator_names = {});

// Letters a, b, c, ... name generators 1, 2, 3, ...; each letter may carry
// an exponent ^n (n may be negative). Throws Parse.
Word parse_word(std::string_view text, int generator_count);
std::string format_word(const Word& w);

struct BallComplex {
  const GroupModel* model = nullptr;
  int radius = 0;
  std::vector<Element> elements;  // BFS order, identity first
  std::vector<int> length;
  Graph graph;                    // right multiplication by generators
  std::unordered_map<Element, int, ElementHash> index;

  int find(const Element& e) const {
    auto it = index.find(e);
    return it == index.end() ? -1 : it->second;
  }
  int size() const { return static_cast<int>(elements.size()); }
};

inline constexpr std::size_t kDefaultBallCap = 2'000'000;

// Throws Validation for R < 1 and SizeLimitExceeded above the cap.
BallComplex build_ball(const GroupModel& model, int radius, std::size_t cap = kDefaultBallCap);

struct Subgroup {
  std::vector<Word> generators;
  std::vector<Element> generator_elements;
};

Subgroup make_subgroup(const GroupModel& model, const std::vector<Word>& generators);

struct Neighbourhood {
  VertexSet subgroup;      // H ∩ ball
  VertexSet neighbourhood; // H^{+L} ∩ ball
  std::vector<int> dist_to_h;  // within the ball, from H ∩ ball
  int margin = 0;
};

// Enumerates H inside radius R + L + margin, checks that a wider margin
// finds nothing new (MarginTooSmall otherwise). margin < 0 selects the
// longest generator length.
Neighbourhood subgroup_neighbourhood(const BallComplex& ball, const Subgroup& h, int L, int margin = -1);

struct DeepComponentReport {
  int R = 0;
  int L = 0;
  int threshold = 0;
  std::vector<VertexSet> components;
  std::vector<bool> deep;
  std::vector<int> depth;                       // max dist_to_h per component
  std::vector<std::vector<int>> h_orbit_classes; // component ids, deep only
  int e_hat = 0;
  int etilde_hat = 0;
  Neighbourhood neighbourhood;

  std::vector<int> deep_ids() const;
};

inline int default_threshold(int R, int L) { return (R - L) / 2; }

// threshold < 0 selects the default. Throws WindowTooSmall when the
// threshold is at least R - L.
DeepComponentReport deep_components(const BallComplex& ball, const Subgroup& h, int L, int threshold = -1);

using ElementPredicate = std::function<bool(const Element&)>;

struct AlmostInvariantSetReport {
  std::vector<int> orbit_classes;     // per radius
  std::vector<int> boundary_classes;  // per radius
  bool orbit_growth = false;
  bool boundary_growth = false;
  int boundary_max_dist = 0;          // max distance to H over the boundary
  bool h_invariant = true;
  std::string invariance_witness;
};

struct AlmostInvariantReport {
  std::vector<int> radii;
  bool disjoint = true;
  std::string disjoint_witness;
  std::vector<AlmostInvariantSetReport> sets;
};

AlmostInvariantReport verify_almost_invariant(const GroupModel& model, const Subgroup& h,
                                              const std::vector<ElementPredicate>& sets, int R1, int R2,
                                              bool require_h_invariant);

struct CoarseSepOptions {
  int R = 12;
  int L = 3;
  int inner_radius = 2;
  int threshold = -1;  // applied to the extended ball
};

struct CoarseSepResult {
  CharacterSpace space;             // points are window ids
  BallComplex window;
  int base_character = -1;          // index in space, or -1 if pruned
  DeepComponentReport base_report;  // on the extended ball
  std::vector<Element> translates;  // inner-ball elements that gave characters
};

// Throws NotCoarselySeparating with fewer than two deep components.
CoarseSepResult coarse_sep_characters(const GroupModel& model, const Subgroup& h, const CoarseSepOptions& options);
// Throws NotCodimensionOne with a single H-orbit class.
CoarseSepResult codimension_one_characters(const GroupModel& model, const Subgroup& h,
                                           const CoarseSepOptions& options);

// Cosets Hg of a finite table model: coset[v] per element, and the Schreier
// graph on cosets.
struct SchreierGraph {
  std::vector<int> coset;
  Graph graph;
  int subgroup_coset = 0;
};

SchreierGraph schreier_graph(const GroupModel& model, const BallComplex& whole_group, const Subgroup& h);

}  // namespace qmedian
