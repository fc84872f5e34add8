#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmedian/action.hpp"
#include "qmedian/error.hpp"
#include "qmedian/group_ends.hpp"
#include "qmedian/io.hpp"
#include "qmedian/median_derivatives.hpp"
#include "qmedian/qm_structure.hpp"
#include "qmedian/quasi_cubulation.hpp"
#include "support/acceptance.hpp"
#include "support/corpus.hpp"

namespace {

using namespace qmedian;
using io::Json;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitValidation = 2;

struct Options {
  bool pretty = false;
  std::uint64_t seed = 0;
  std::string input;
  std::string dot;
  bool dot_requested = false;
  int focus = 0;
  int cap = kDefaultPolytopeCap;
  std::string keep;
  std::string drop;
  bool keep_given = false;
  std::string flavor = "coherent";
  std::string property;
  WitnessBounds bounds;
  int R = -1;
  int L = -1;
  int threshold = -2;
  int inner_radius = -1;
  bool local = false;
  bool codim_one = false;
  std::string emit_dir;
  int amalgams = 25;
};

void emit(const Options& o, const Json& j) { std::cout << io::dump(j, o.pretty) << "\n"; }

void write_dot(const Options& o, const std::string& text) {
  if (o.dot.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.dot);
  if (!out) raise(ErrorKind::Validation, "cannot write " + o.dot);
  out << text;
}

std::vector<int> parse_ids(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) raise(ErrorKind::Parse, "bad hyperplane id '" + item + "'");
    out.push_back(v);
  }
  return out;
}

Graph load_graph(const Options& o) { return io::graph_from_json(io::read_json_file(o.input)); }

int cmd_recognize(const Options& o) {
  const Graph g = load_graph(o);
  Json j = io::recognition_to_json(recognize(g));
  if (o.local) j["local_conditions"] = io::local_conditions_to_json(check_local_conditions(g));
  emit(o, j);
  return kExitOk;
}

int cmd_hyperplanes(const Options& o) {
  const HyperplaneDecomposition d(load_graph(o));
  if (o.focus < 0 || o.focus >= std::max(1, d.count())) raise(ErrorKind::Validation, "focus hyperplane out of range");
  if (o.dot_requested) {
    write_dot(o, io::decomposition_to_dot(d, o.focus));
    if (o.dot.empty()) return kExitOk;
  }
  emit(o, io::decomposition_to_json(d));
  return kExitOk;
}

int cmd_prism_graph(const Options& o) {
  const HyperplaneDecomposition d(load_graph(o));
  const auto pg = build_prism_graph(d);
  if (o.dot_requested) {
    write_dot(o, io::prism_graph_to_dot(pg));
    if (o.dot.empty()) return kExitOk;
  }
  Json j = io::prism_graph_to_json(pg);
  j["is_median"] = is_median(pg.graph);
  emit(o, j);
  return kExitOk;
}

int cmd_polytope_graph(const Options& o) {
  const HyperplaneDecomposition d(load_graph(o));
  const auto pg = build_polytope_graph(d, o.cap);
  Json j = io::polytope_graph_to_json(pg);
  j["is_median"] = is_median(pg.graph);
  emit(o, j);
  return kExitOk;
}

int cmd_collapse(const Options& o) {
  const HyperplaneDecomposition d(load_graph(o));
  std::vector<int> drop;
  if (o.keep_given) {
    const auto keep = parse_ids(o.keep);
    for (int h : keep) {
      if (h < 0 || h >= d.count()) raise(ErrorKind::Validation, "unknown hyperplane id " + std::to_string(h));
    }
    for (int h = 0; h < d.count(); ++h) {
      if (std::find(keep.begin(), keep.end(), h) == keep.end()) drop.push_back(h);
    }
  } else {
    drop = parse_ids(o.drop);
  }
  emit(o, io::collapse_to_json(collapse(d, drop)));
  return kExitOk;
}

CharacterSpace load_space(const std::string& path) {
  if (std::filesystem::path(path).extension() == ".csv") return io::character_space_from_csv(io::read_text_file(path));
  return io::character_space_from_json(io::read_json_file(path));
}

int cmd_cubulate(const Options& o) {
  const auto space = load_space(o.input);
  const Flavor flavor = parse_flavor(o.flavor);
  auto sg = build_selector_graph(space, flavor);
  const bool connected = sg.graph.is_connected();
  if (flavor == Flavor::Coherent) sg = pointed_component(sg);
  if (o.dot_requested) {
    write_dot(o, io::selector_graph_to_dot(sg));
    if (o.dot.empty()) return kExitOk;
  }
  Json j = io::selector_graph_to_json(sg);
  j["connected"] = connected;
  j["is_quasi_median"] = sg.graph.is_connected() && is_quasi_median(sg.graph);
  emit(o, j);
  return kExitOk;
}

int cmd_witness(const Options& o) {
  const auto p = parse_witness_property(o.property);
  const auto w = witness_search(p, o.bounds);
  emit(o, Json{{"property", std::string(to_string(p))},
               {"examined", w.examined},
               {"space", io::character_space_to_json(w.space)}});
  return kExitOk;
}

io::ModelSpec load_model(const Options& o) {
  const auto base = std::filesystem::path(o.input).parent_path().string();
  auto spec = io::model_from_json(io::read_json_file(o.input), base.empty() ? "." : base);
  if (o.R >= 0) spec.R = o.R;
  if (o.L >= 0) spec.L = o.L;
  if (o.threshold >= -1) spec.threshold = o.threshold;
  if (o.inner_radius >= 0) spec.inner_radius = o.inner_radius;
  if (spec.subgroup.empty()) raise(ErrorKind::Validation, "model needs a nonempty subgroup");
  return spec;
}

int cmd_ends(const Options& o) {
  const auto spec = load_model(o);
  const auto ball = build_ball(*spec.model, spec.R);
  const auto h = make_subgroup(*spec.model, spec.subgroup);
  const auto rep = deep_components(ball, h, spec.L, spec.threshold);
  if (o.dot_requested) {
    write_dot(o, io::ends_to_dot(ball, rep));
    if (o.dot.empty()) return kExitOk;
  }
  Json j = io::deep_report_to_json(rep);
  j["model"] = spec.model->kind();
  j["subgroup"] = spec.subgroup_text;
  j["ball_size"] = ball.size();
  emit(o, j);
  return kExitOk;
}

int cmd_coarse_sep(const Options& o) {
  const auto spec = load_model(o);
  CoarseSepOptions opt;
  opt.R = spec.R;
  opt.L = spec.L;
  opt.inner_radius = spec.inner_radius;
  opt.threshold = spec.threshold;
  const auto h = make_subgroup(*spec.model, spec.subgroup);
  const auto cs = o.codim_one ? codimension_one_characters(*spec.model, h, opt) : coarse_sep_characters(*spec.model, h, opt);
  const auto qm = pointed_component(build_selector_graph(cs.space, Flavor::Coherent));
  const bool qm_flag = is_quasi_median(qm.graph);
  Json clades = Json::array();
  for (const auto& c : cs.space.characters()) clades.push_back(c.size());
  Json j{{"window_size", cs.window.size()},
         {"characters", cs.space.size()},
         {"clades_per_character", clades},
         {"base_character", cs.base_character},
         {"base_report", io::deep_report_to_json(cs.base_report)},
         {"component_nodes", qm.nodes.size()},
         {"component_edges", qm.graph.size()},
         {"is_quasi_median", qm_flag},
         {"is_median", qm_flag && is_median(qm.graph)}};
  if (qm_flag) {
    const auto map = character_hyperplane_map(cs.space, qm);
    j["hyperplanes"] = map.decomposition.count();
    const auto it = map.character_hyperplane.find(cs.base_character);
    j["base_sectors"] = it == map.character_hyperplane.end() ? 0 : map.decomposition[it->second].sectors.size();
  }
  emit(o, j);
  return kExitOk;
}

int cmd_action(const Options& o) {
  const auto action = io::action_from_json(io::read_json_file(o.input));
  const HyperplaneDecomposition d(action.graph());
  const auto rep = analyze_action(action, d);
  Json j = io::action_report_to_json(rep);
  const auto core = convex_minimal_core(action);
  j["core"] = Json{{"base", core.base},
                   {"vertices", io::vertex_set_to_json(core.core)},
                   {"sector_orbits", core.sector_orbits},
                   {"restricted_convex_minimal", core.restricted_convex_minimal}};
  if (rep.hyperplane_transitive && rep.convex_minimal) {
    const auto mono = monohyp_prism_check(action);
    j["prism_lift"] = Json{{"lifted_convex_minimal", mono.lifted_convex_minimal},
                           {"agrees_with_strong_convex_minimality", mono.agree},
                           {"lifted_inversion_free", mono.lifted_inversion_free}};
  } else {
    j["prism_lift"] = nullptr;
  }
  const auto fixed = fixed_vertex(action);
  j["fixed_vertex"] = fixed ? Json(*fixed) : Json(nullptr);
  emit(o, j);
  return kExitOk;
}

int cmd_corpus(const Options& o) {
  if (!o.emit_dir.empty()) {
    std::filesystem::create_directories(o.emit_dir);
    auto write = [&](const std::string& name, const Graph& g) {
      std::ofstream out(std::filesystem::path(o.emit_dir) / (name + ".json"));
      out << io::dump(io::graph_to_json(g), o.pretty) << "\n";
    };
    for (const auto& c : testing::recognition_corpus()) write(c.name, c.graph);
    for (const auto& c : testing::quasi_median_corpus()) write(c.name, c.graph);
    testing::Rng rng(o.seed);
    for (int k = 0; k < o.amalgams; ++k) write("amalgam_" + std::to_string(k), testing::random_gated_amalgam(rng, 20));
    return kExitOk;
  }
  const auto results = testing::run_acceptance(o.seed);
  std::cout << testing::format_results(results);
  for (const auto& r : results) {
    if (!r.pass) return kExitInvariant;
  }
  return kExitOk;
}

int exit_code_for(ErrorKind k) {
  return (k == ErrorKind::InternalInvariantViolation || k == ErrorKind::PointedSplit) ? kExitInvariant : kExitValidation;
}

void check_thread_cap() {
  const char* env = std::getenv("QMEDIAN_THREADS");
  if (env == nullptr) return;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) raise(ErrorKind::Validation, "QMEDIAN_THREADS must be a positive integer");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-median graph toolkit"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--pretty", o.pretty, "Indented JSON output");

  auto input = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("input", o.input, what)->required()->check(CLI::ExistingFile);
  };
  auto dot = [&](CLI::App* sub) {
    sub->add_option("--dot", o.dot, "Write DOT to a file, or to stdout when no file is given")->expected(0, 1);
  };

  auto* recognize_cmd = app.add_subcommand("recognize", "Quasi-median and median recognition");
  input(recognize_cmd, "Graph JSON");
  recognize_cmd->add_flag("--local", o.local, "Also report the local conditions");

  auto* hyper_cmd = app.add_subcommand("hyperplanes", "Hyperplane and sector decomposition");
  input(hyper_cmd, "Graph JSON");
  dot(hyper_cmd);
  hyper_cmd->add_option("--focus", o.focus, "Hyperplane whose sectors colour the DOT vertices");

  auto* prism_cmd = app.add_subcommand("prism-graph", "Graph of prisms");
  input(prism_cmd, "Graph JSON");
  dot(prism_cmd);

  auto* poly_cmd = app.add_subcommand("polytope-graph", "Graph of polytopes");
  input(poly_cmd, "Graph JSON");
  poly_cmd->add_option("--cap", o.cap, "Vertex cap")->check(CLI::PositiveNumber);

  auto* collapse_cmd = app.add_subcommand("collapse", "Hyperplane collapse of a median graph");
  input(collapse_cmd, "Graph JSON");
  auto* keep = collapse_cmd->add_option("--keep", o.keep, "Comma-separated hyperplane ids to keep");
  auto* drop = collapse_cmd->add_option("--drop", o.drop, "Comma-separated hyperplane ids to collapse");
  keep->excludes(drop);
  drop->excludes(keep);

  auto* cub_cmd = app.add_subcommand("cubulate", "Selector graph of a space with characters");
  input(cub_cmd, "Character space JSON or CSV");
  cub_cmd->add_option("--flavor", o.flavor, "coherent, buneman, relation or all");
  dot(cub_cmd);

  auto* wit_cmd = app.add_subcommand("witness", "Bounded search for selector-graph phenomena");
  wit_cmd->add_option("property", o.property,
                      "buneman_disconnected, relation_disconnected, relation_not_isometric or buneman_smaller_qm")
      ->required();
  wit_cmd->add_option("--max-points", o.bounds.max_points)->check(CLI::Range(2, 8));
  wit_cmd->add_option("--max-characters", o.bounds.max_characters)->check(CLI::Range(1, 6));
  wit_cmd->add_option("--max-clades", o.bounds.max_clades)->check(CLI::Range(2, 6));

  auto window_options = [&](CLI::App* sub) {
    sub->add_option("--R", o.R, "Window radius")->check(CLI::PositiveNumber);
    sub->add_option("--L", o.L, "Neighbourhood radius")->check(CLI::NonNegativeNumber);
    sub->add_option("--threshold", o.threshold, "Depth threshold, -1 for the default")->check(CLI::Range(-1, 1 << 20));
  };
  auto* ends_cmd = app.add_subcommand("ends", "Deep components of a subgroup neighbourhood");
  input(ends_cmd, "Model JSON");
  window_options(ends_cmd);
  dot(ends_cmd);

  auto* cs_cmd = app.add_subcommand("coarse-sep-cubulate", "Characters from a coarsely separating subgroup");
  input(cs_cmd, "Model JSON");
  window_options(cs_cmd);
  cs_cmd->add_option("--inner-radius", o.inner_radius, "Radius of translating elements")->check(CLI::NonNegativeNumber);
  cs_cmd->add_flag("--codim-one", o.codim_one, "Use the codimension-one bipartition instead");

  auto* action_cmd = app.add_subcommand("action", "Finite group action analysis");
  input(action_cmd, "Action JSON");

  auto* corpus_cmd = app.add_subcommand("corpus", "Run the acceptance suite");
  corpus_cmd->add_option("--seed", o.seed, "Seed for randomized corpus members");
  corpus_cmd->add_option("--emit", o.emit_dir, "Write corpus graphs as JSON into this directory instead");
  corpus_cmd->add_option("--amalgams", o.amalgams, "Random amalgams to emit")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    check_thread_cap();
    for (CLI::App* sub : {hyper_cmd, prism_cmd, cub_cmd, ends_cmd}) {
      if (sub->parsed() && sub->count("--dot") > 0) o.dot_requested = true;
    }
    if (collapse_cmd->parsed()) {
      if (keep->count() == 0 && drop->count() == 0) raise(ErrorKind::Validation, "collapse needs --keep or --drop");
      o.keep_given = keep->count() > 0;
    }
    if (recognize_cmd->parsed()) return cmd_recognize(o);
    if (hyper_cmd->parsed()) return cmd_hyperplanes(o);
    if (prism_cmd->parsed()) return cmd_prism_graph(o);
    if (poly_cmd->parsed()) return cmd_polytope_graph(o);
    if (collapse_cmd->parsed()) return cmd_collapse(o);
    if (cub_cmd->parsed()) return cmd_cubulate(o);
    if (wit_cmd->parsed()) return cmd_witness(o);
    if (ends_cmd->parsed()) return cmd_ends(o);
    if (cs_cmd->parsed()) return cmd_coarse_sep(o);
    if (action_cmd->parsed()) return cmd_action(o);
    if (corpus_cmd->parsed()) return cmd_corpus(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitValidation;
}
