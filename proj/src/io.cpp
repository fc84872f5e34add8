#include "qmedian/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "qmedian/error.hpp"

namespace qmedian::io {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    raise(ErrorKind::Parse, e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::Validation, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) { return parse_json(read_text_file(path)); }

std::string dump(const Json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) raise(ErrorKind::Validation, std::string("missing field '") + key + "'");
  return j.at(key);
}

int as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) raise(ErrorKind::Validation, what + " must be an integer");
  return j.get<int>();
}

int int_or(const Json& j, const char* key, int fallback) {
  return j.contains(key) ? as_int(j.at(key), key) : fallback;
}

std::vector<int> int_list(const Json& j, const std::string& what) {
  if (!j.is_array()) raise(ErrorKind::Validation, what + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(as_int(v, what + " entry"));
  return out;
}

Json sector_id(SectorId s) { return Json{{"hyperplane", s.hyperplane}, {"sector", s.index}}; }

}  // namespace

Graph graph_from_json(const Json& j) {
  const int n = as_int(field(j, "n"), "n");
  const auto& es = field(j, "edges");
  if (!es.is_array()) raise(ErrorKind::Validation, "edges must be an array");
  std::vector<Edge> edges;
  for (const auto& e : es) {
    const auto pair = int_list(e, "edge");
    if (pair.size() != 2) raise(ErrorKind::Validation, "an edge needs exactly two endpoints");
    edges.emplace_back(pair[0], pair[1]);
  }
  return Graph::from_edges(n, edges);
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return Json{{"n", g.order()}, {"edges", edges}};
}

Json vertex_set_to_json(const VertexSet& s) { return Json(s.members()); }

Json recognition_to_json(const RecognitionReport& r) {
  return Json{{"is_weakly_modular", r.is_weakly_modular},
              {"is_quasi_median", r.is_quasi_median},
              {"is_median", r.is_median},
              {"triangle_free", r.triangle_free},
              {"triangle_violations", r.triangle_violations},
              {"quadrangle_violations", r.quadrangle_violations},
              {"forbidden_subgraphs", Json{{"K23", r.forbidden_k23}, {"K4minus", r.forbidden_k4minus}}}};
}

Json local_conditions_to_json(const LocalConditionsReport& r) {
  return Json{{"forbidden_free", r.forbidden_free},
              {"cube_condition", r.cube_condition},
              {"prism_condition", r.prism_condition},
              {"h1_trivial", r.h1_trivial},
              {"h1_rank", r.h1_rank}};
}

Json decomposition_to_json(const HyperplaneDecomposition& d) {
  Json hps = Json::array();
  const auto edges = d.graph().edges();
  for (int h = 0; h < d.count(); ++h) {
    Json es = Json::array();
    for (int e : d[h].edges) es.push_back({edges[e].first, edges[e].second});
    Json sectors = Json::array();
    for (const auto& s : d[h].sectors) sectors.push_back(vertex_set_to_json(s));
    Json fibres = Json::array();
    for (const auto& f : d[h].fibres) fibres.push_back(vertex_set_to_json(f));
    hps.push_back(Json{{"id", h},
                       {"edges", es},
                       {"sectors", sectors},
                       {"carrier", vertex_set_to_json(d[h].carrier)},
                       {"fibres", fibres}});
  }
  Json transverse = Json::array();
  for (int a = 0; a < d.count(); ++a) {
    for (int b = a + 1; b < d.count(); ++b) {
      if (d.transverse(a, b)) transverse.push_back({a, b});
    }
  }
  return Json{{"n", d.graph().order()}, {"hyperplanes", hps}, {"transverse", transverse}};
}

Json prism_graph_to_json(const PrismGraph& pg) {
  Json nodes = Json::array();
  for (const auto& p : pg.nodes) {
    nodes.push_back(Json{{"vertices", vertex_set_to_json(p.vertices)}, {"hyperplanes", p.hyperplanes}});
  }
  Json edges = Json::array();
  for (const auto& e : pg.covers) {
    edges.push_back(Json{{"lower", e.lower}, {"upper", e.upper}, {"label", sector_id(e.label)}});
  }
  return Json{{"nodes", nodes}, {"edges", edges}};
}

Json polytope_graph_to_json(const PolytopeGraph& pg) {
  Json nodes = Json::array();
  for (const auto& p : pg.nodes) {
    nodes.push_back(Json{{"vertices", vertex_set_to_json(p.vertices)}, {"hyperplanes", p.hyperplanes}});
  }
  Json edges = Json::array();
  for (auto [lo, hi] : pg.covers) edges.push_back(Json{{"lower", lo}, {"upper", hi}});
  return Json{{"nodes", nodes}, {"edges", edges}};
}

Json collapse_to_json(const CollapseMap& c) {
  Json fibres = Json::array();
  for (const auto& f : c.fibres) fibres.push_back(vertex_set_to_json(f));
  return Json{{"kept", c.kept},
              {"collapsed", c.collapsed},
              {"projection", c.projection},
              {"graph", graph_to_json(c.target)},
              {"fibres", fibres}};
}

CharacterSpace character_space_from_json(const Json& j) {
  const int n = as_int(field(j, "points"), "points");
  const auto& cs = field(j, "characters");
  if (!cs.is_array()) raise(ErrorKind::Validation, "characters must be an array");
  std::vector<std::vector<std::vector<int>>> chars;
  for (const auto& c : cs) {
    if (!c.is_array()) raise(ErrorKind::Validation, "a character must be an array of clades");
    std::vector<std::vector<int>> clades;
    for (const auto& clade : c) clades.push_back(int_list(clade, "clade"));
    chars.push_back(std::move(clades));
  }
  return CharacterSpace(n, chars);
}

Json character_space_to_json(const CharacterSpace& s) {
  Json chars = Json::array();
  for (const auto& c : s.characters()) {
    Json clades = Json::array();
    for (const auto& clade : c) clades.push_back(vertex_set_to_json(clade));
    chars.push_back(clades);
  }
  return Json{{"points", s.points()}, {"characters", chars}};
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CharacterSpace character_space_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.size() < 2) raise(ErrorKind::Parse, "CSV needs a header row and at least one point");
  const std::size_t width = rows[0].size();
  if (width < 2) raise(ErrorKind::Parse, "CSV needs at least one character column");
  const int n = static_cast<int>(rows.size()) - 1;
  std::vector<std::vector<std::vector<int>>> chars(width - 1);
  std::vector<std::string> labels;
  for (int x = 0; x < n; ++x) {
    const auto& row = rows[x + 1];
    if (row.size() != width) raise(ErrorKind::Parse, "CSV row " + std::to_string(x + 2) + " has the wrong width");
    labels.push_back(row[0]);
  }
  for (std::size_t c = 1; c < width; ++c) {
    std::map<std::string, std::vector<int>> clades;
    for (int x = 0; x < n; ++x) {
      const auto& cell = rows[x + 1][c];
      if (cell.empty()) raise(ErrorKind::Validation, "empty cell for point " + labels[x]);
      clades[cell].push_back(x);
    }
    for (auto& [_, members] : clades) chars[c - 1].push_back(std::move(members));
  }
  CharacterSpace space(n, chars);
  space.labels = std::move(labels);
  return space;
}

Json selector_graph_to_json(const SelectorGraph& sg) {
  Json edges = Json::array();
  for (auto [u, v] : sg.graph.edges()) edges.push_back({u, v});
  return Json{{"flavor", std::string(to_string(sg.flavor))},
              {"nodes", sg.nodes},
              {"edges", edges},
              {"pointed", sg.pointed}};
}

namespace {

std::unique_ptr<GroupModel> build_model(const Json& j, const std::string& base_dir);

Json load_reference(const Json& j, const std::string& base_dir) {
  if (j.is_string()) {
    std::filesystem::path p(j.get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return read_json_file(p.string());
  }
  return j;
}

std::unique_ptr<GroupModel> build_table(const Json& j, const std::string& base_dir) {
  const Graph g = graph_from_json(load_reference(field(j, "graph"), base_dir));
  const Json labels = load_reference(field(j, "labels"), base_dir);
  const auto& names_json = field(labels, "generators");
  if (!names_json.is_array() || names_json.empty()) raise(ErrorKind::Validation, "generators must be a nonempty array");
  std::vector<std::string> names;
  for (const auto& s : names_json) {
    if (!s.is_string()) raise(ErrorKind::Validation, "generator names must be strings");
    names.push_back(s.get<std::string>());
  }
  const int k = static_cast<int>(names.size());
  const int identity = as_int(field(labels, "identity"), "identity");
  std::vector<std::vector<int>> right(g.order(), std::vector<int>(k, -1));
  const auto& triples = field(labels, "right");
  if (!triples.is_array()) raise(ErrorKind::Validation, "right must be an array of [from, generator, to]");
  for (const auto& t : triples) {
    const auto v = int_list(t, "right entry");
    if (v.size() != 3) raise(ErrorKind::Validation, "right entries are [from, generator, to]");
    if (v[0] < 0 || v[0] >= g.order() || v[2] < 0 || v[2] >= g.order() || v[1] < 0 || v[1] >= k) {
      raise(ErrorKind::Validation, "right entry out of range");
    }
    if (v[0] != v[2] && !g.adjacent(v[0], v[2])) {
      raise(ErrorKind::Validation, "right entry [" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," +
                                       std::to_string(v[2]) + "] is not an edge of the graph");
    }
    right[v[0]][v[1]] = v[2];
  }
  for (int v = 0; v < g.order(); ++v) {
    for (int gen = 0; gen < k; ++gen) {
      if (right[v][gen] < 0) raise(ErrorKind::Validation, "table misses " + std::to_string(v) + "·" + names[gen]);
    }
  }
  return make_table(std::move(right), identity, std::move(names));
}

std::unique_ptr<GroupModel> build_model(const Json& j, const std::string& base_dir) {
  const auto& kind_json = field(j, "kind");
  if (!kind_json.is_string()) raise(ErrorKind::Validation, "kind must be a string");
  const auto kind = kind_json.get<std::string>();
  if (kind == "free_abelian") return make_free_abelian(as_int(field(j, "rank"), "rank"));
  if (kind == "free") return make_free(as_int(field(j, "rank"), "rank"));
  if (kind == "direct_product" || kind == "free_product") {
    const auto& fs = field(j, "factors");
    if (!fs.is_array()) raise(ErrorKind::Validation, "factors must be an array");
    std::vector<std::unique_ptr<GroupModel>> factors;
    for (const auto& f : fs) factors.push_back(build_model(f, base_dir));
    return kind == "direct_product" ? make_direct_product(std::move(factors)) : make_free_product(std::move(factors));
  }
  if (kind == "table") return build_table(j, base_dir);
  raise(ErrorKind::Validation, "unknown model kind '" + kind + "'");
}

}  // namespace

ModelSpec model_from_json(const Json& j, const std::string& base_dir) {
  ModelSpec spec;
  spec.model = build_model(j, base_dir);
  spec.source = j;
  if (j.contains("subgroup")) {
    const auto& hs = j.at("subgroup");
    if (!hs.is_array()) raise(ErrorKind::Validation, "subgroup must be an array of words");
    for (const auto& w : hs) {
      if (!w.is_string()) raise(ErrorKind::Validation, "subgroup words must be strings");
      spec.subgroup_text.push_back(w.get<std::string>());
      spec.subgroup.push_back(parse_word(spec.subgroup_text.back(), spec.model->generator_count()));
    }
  }
  spec.R = int_or(j, "R", spec.R);
  spec.L = int_or(j, "L", spec.L);
  spec.threshold = int_or(j, "threshold", spec.threshold);
  spec.inner_radius = int_or(j, "inner_radius", spec.inner_radius);
  if (spec.R < 1) raise(ErrorKind::Validation, "R must be at least 1");
  if (spec.L < 0) raise(ErrorKind::Validation, "L must be non-negative");
  if (spec.inner_radius < 0) raise(ErrorKind::Validation, "inner_radius must be non-negative");
  return spec;
}

Json deep_report_to_json(const DeepComponentReport& r) {
  Json comps = Json::array();
  for (std::size_t c = 0; c < r.components.size(); ++c) {
    comps.push_back(Json{{"size", r.components[c].count()}, {"depth", r.depth[c]}, {"deep", static_cast<bool>(r.deep[c])}});
  }
  return Json{{"R", r.R},
              {"L", r.L},
              {"threshold", r.threshold},
              {"margin", r.neighbourhood.margin},
              {"neighbourhood_size", r.neighbourhood.neighbourhood.count()},
              {"components", comps},
              {"h_orbit_classes", r.h_orbit_classes},
              {"e_hat", r.e_hat},
              {"etilde_hat", r.etilde_hat},
              {"note", "finite-window estimate; depth threshold and window radius are not canonical"}};
}

GraphAction action_from_json(const Json& j) {
  Graph g = graph_from_json(field(j, "graph"));
  const auto& gens = field(j, "generators");
  if (!gens.is_array()) raise(ErrorKind::Validation, "generators must be an array of permutations");
  std::vector<Permutation> perms;
  for (const auto& p : gens) perms.push_back(int_list(p, "permutation"));
  return GraphAction(std::move(g), std::move(perms));
}

Json action_to_json(const GraphAction& a) {
  return Json{{"graph", graph_to_json(a.graph())}, {"generators", a.generators()}};
}

Json action_report_to_json(const ActionReport& r) {
  Json inversion = nullptr;
  if (r.has_hyperplane_inversion) inversion = Json{{"element", r.inversion_element}, {"hyperplane", r.inversion_hyperplane}};
  return Json{{"hyperplane_orbits", r.hyperplane_orbits},
              {"hyperplane_transitive", r.hyperplane_transitive},
              {"convex_minimal", r.convex_minimal},
              {"strongly_convex_minimal", r.strongly_convex_minimal},
              {"has_hyperplane_inversion", r.has_hyperplane_inversion},
              {"inversion", inversion},
              {"orbits_bounded", r.orbits_bounded},
              {"disclaimer", r.disclaimer},
              {"q", r.q},
              {"p", r.p},
              {"closure_size", r.closure_size},
              {"closure_complete", r.closure_complete}};
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string colour(int i) { return kPalette[static_cast<std::size_t>(i) % std::size(kPalette)]; }

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string set_label(const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](int v) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  });
  return out + "}";
}

}  // namespace

std::string decomposition_to_dot(const HyperplaneDecomposition& d, int focus) {
  std::ostringstream out;
  const Graph& g = d.graph();
  out << "graph decomposition {\n  node [style=filled, fontcolor=white];\n";
  for (int v = 0; v < g.order(); ++v) {
    const int sector = (focus >= 0 && focus < d.count()) ? d[focus].sector_of[v] : 0;
    out << "  " << v << " [fillcolor=" << quoted(colour(sector)) << "];\n";
  }
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const int h = d.hyperplane_of_edge(static_cast<int>(e));
    out << "  " << edges[e].first << " -- " << edges[e].second << " [color=" << quoted(colour(h))
        << ", label=" << quoted("J" + std::to_string(h)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string prism_graph_to_dot(const PrismGraph& pg) {
  std::ostringstream out;
  out << "digraph prisms {\n";
  for (std::size_t i = 0; i < pg.nodes.size(); ++i) {
    out << "  " << i << " [label=" << quoted(set_label(pg.nodes[i].vertices)) << "];\n";
  }
  std::map<SectorId, int> ids;
  for (const auto& e : pg.covers) {
    const int c = ids.emplace(e.label, static_cast<int>(ids.size())).first->second;
    out << "  " << e.lower << " -> " << e.upper << " [color=" << quoted(colour(c)) << ", label="
        << quoted("S" + std::to_string(e.label.hyperplane) + "." + std::to_string(e.label.index)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string selector_graph_to_dot(const SelectorGraph& sg) {
  std::ostringstream out;
  out << "graph selectors {\n";
  for (std::size_t i = 0; i < sg.nodes.size(); ++i) {
    std::string label;
    for (std::size_t c = 0; c < sg.nodes[i].size(); ++c) label += (c ? "," : "") + std::to_string(sg.nodes[i][c]);
    const bool pointed = std::find(sg.pointed.begin(), sg.pointed.end(), static_cast<int>(i)) != sg.pointed.end();
    out << "  " << i << " [label=" << quoted(label) << (pointed ? ", shape=box" : "") << "];\n";
  }
  for (auto [u, v] : sg.graph.edges()) {
    int c = 0;
    while (sg.nodes[u][c] == sg.nodes[v][c]) ++c;
    out << "  " << u << " -- " << v << " [color=" << quoted(colour(c)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string ends_to_dot(const BallComplex& ball, const DeepComponentReport& r) {
  std::vector<int> comp(ball.size(), -1);
  for (std::size_t c = 0; c < r.components.size(); ++c) r.components[c].for_each([&](int v) { comp[v] = static_cast<int>(c); });
  std::ostringstream out;
  out << "graph ends {\n  node [style=filled, shape=point, width=0.08];\n";
  for (int v = 0; v < ball.size(); ++v) {
    std::string fill = "#000000";
    if (r.neighbourhood.neighbourhood.contains(v)) {
      fill = "#d62728";
    } else if (comp[v] >= 0 && r.deep[comp[v]]) {
      fill = colour(comp[v]);
    } else {
      fill = "#cccccc";
    }
    out << "  " << v << " [fillcolor=" << quoted(fill) << ", tooltip=" << quoted(ball.model->format(ball.elements[v]))
        << "];\n";
  }
  for (auto [u, v] : ball.graph.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace qmedian::io
