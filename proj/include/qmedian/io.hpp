#pragma once

#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmedian/action.hpp"
#include "qmedian/graph.hpp"
#include "qmedian/group_ends.hpp"
#include "qmedian/median_derivatives.hpp"
#include "qmedian/qm_structure.hpp"
#include "qmedian/quasi_cubulation.hpp"

namespace qmedian::io {

using Json = nlohmann::ordered_json;

// Parse errors come out as ErrorKind::Parse, shape problems as Validation.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
std::string dump(const Json& j, bool pretty);

Graph graph_from_json(const Json& j);
Json graph_to_json(const Graph& g);

Json vertex_set_to_json(const VertexSet& s);
Json recognition_to_json(const RecognitionReport& r);
Json local_conditions_to_json(const LocalConditionsReport& r);
Json decomposition_to_json(const HyperplaneDecomposition& d);
Json prism_graph_to_json(const PrismGraph& pg);
Json polytope_graph_to_json(const PolytopeGraph& pg);
Json collapse_to_json(const CollapseMap& c);

CharacterSpace character_space_from_json(const Json& j);
Json character_space_to_json(const CharacterSpace& s);
// Rows are points, columns characters; the first column names the point and
// the first row names the characters. Cells are clade names.
CharacterSpace character_space_from_csv(const std::string& text);
Json selector_graph_to_json(const SelectorGraph& sg);

struct ModelSpec {
  std::unique_ptr<GroupModel> model;
  std::vector<Word> subgroup;
  std::vector<std::string> subgroup_text;
  int R = 8;
  int L = 2;
  int threshold = -1;
  int inner_radius = 2;
  Json source;
};

// `base_dir` resolves relative file references of table models.
ModelSpec model_from_json(const Json& j, const std::string& base_dir = ".");
Json deep_report_to_json(const DeepComponentReport& r);

GraphAction action_from_json(const Json& j);
Json action_to_json(const GraphAction& a);
Json action_report_to_json(const ActionReport& r);

// DOT emitters. `focus` picks the hyperplane whose sectors colour vertices.
std::string decomposition_to_dot(const HyperplaneDecomposition& d, int focus = 0);
std::string prism_graph_to_dot(const PrismGraph& pg);
std::string selector_graph_to_dot(const SelectorGraph& sg);
std::string ends_to_dot(const BallComplex& ball, const DeepComponentReport& r);

}  // namespace qmedian::io
