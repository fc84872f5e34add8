#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <boost/pending/disjoint_sets.hpp>

#include "qmedian/error.hpp"
#include "qmedian/group_ends.hpp"

namespace qmedian {

BallComplex build_ball(const GroupModel& model, int radius, std::size_t cap) {
  if (radius < 1) raise(ErrorKind::Validation, "ball radius must be at least 1");
  BallComplex ball;
  ball.model = &model;
  ball.radius = radius;
  const int k = model.generator_count();
  ball.elements.push_back(model.identity());
  ball.length.push_back(0);
  ball.index.emplace(ball.elements.back(), 0);
  std::vector<Edge> edges;
  for (std::size_t head = 0; head < ball.elements.size(); ++head) {
    const Element x = ball.elements[head];
    const int len = ball.length[head];
    for (int letter = -k; letter <= k; ++letter) {
      if (letter == 0) continue;
      Element y = model.multiply_letter(x, letter);
      auto it = ball.index.find(y);
      int id;
      if (it != ball.index.end()) {
        id = it->second;
      } else {
        if (len == radius) continue;
        if (ball.elements.size() >= cap) {
          raise(ErrorKind::SizeLimitExceeded, "ball exceeds " + std::to_string(cap) + " elements");
        }
        id = static_cast<int>(ball.elements.size());
        ball.elements.push_back(std::move(y));
        ball.length.push_back(len + 1);
        ball.index.emplace(ball.elements.back(), id);
      }
      if (static_cast<int>(head) < id) edges.emplace_back(static_cast<int>(head), id);
    }
  }
  ball.graph = Graph::from_edges_dedup(ball.size(), edges);
  return ball;
}

Subgroup make_subgroup(const GroupModel& model, const std::vector<Word>& generators) {
  Subgroup h{generators, {}};
  for (const auto& w : generators) h.generator_elements.push_back(model.evaluate(w));
  return h;
}

namespace {

std::vector<Element> symmetric_generators(const GroupModel& model, const Subgroup& h) {
  std::vector<Element> out;
  for (const auto& g : h.generator_elements) {
    out.push_back(g);
    out.push_back(model.inverse(g));
  }
  return out;
}

// H-elements of length <= keep, found by walking the subgroup's Cayley graph
// through elements of length <= bound.
std::set<Element> enumerate_subgroup(const GroupModel& model, const Subgroup& h, int bound, int keep) {
  const auto gens = symmetric_generators(model, h);
  std::set<Element> seen{model.identity()};
  std::deque<Element> queue{model.identity()};
  std::set<Element> kept;
  while (!queue.empty()) {
    Element x = std::move(queue.front());
    queue.pop_front();
    if (model.length(x) <= keep) kept.insert(x);
    for (const auto& g : gens) {
      Element y = model.multiply(x, g);
      if (model.length(y) > bound || !seen.insert(y).second) continue;
      queue.push_back(std::move(y));
    }
  }
  return kept;
}

}  // namespace

Neighbourhood subgroup_neighbourhood(const BallComplex& ball, const Subgroup& h, int L, int margin) {
  const GroupModel& model = *ball.model;
  if (L < 0) raise(ErrorKind::Validation, "L must be non-negative");
  if (margin < 0) {
    margin = 0;
    for (const auto& g : h.generator_elements) margin = std::max(margin, model.length(g));
  }
  const int R = ball.radius;
  const auto inner = enumerate_subgroup(model, h, R + L + margin, R + L);
  int maxgen = 1;
  for (const auto& g : h.generator_elements) maxgen = std::max(maxgen, model.length(g));
  const auto wider = enumerate_subgroup(model, h, R + L + margin + 2 * maxgen, R + L);
  if (inner != wider) {
    raise(ErrorKind::MarginTooSmall, "subgroup enumeration with margin " + std::to_string(margin) +
                                         " misses elements found with margin " + std::to_string(margin + 2 * maxgen));
  }

  Neighbourhood nb;
  nb.margin = margin;
  nb.subgroup = VertexSet(ball.size());
  nb.neighbourhood = VertexSet(ball.size());
  std::vector<Element> short_elements;
  for (int v = 0; v < ball.size() && ball.length[v] <= L; ++v) short_elements.push_back(ball.elements[v]);
  if (L > R) {
    const auto big = build_ball(model, L);
    short_elements = big.elements;
  }
  for (const auto& x : inner) {
    const int id = ball.find(x);
    if (id >= 0) nb.subgroup.insert(id);
    for (const auto& w : short_elements) {
      const int y = ball.find(model.multiply(x, w));
      if (y >= 0) nb.neighbourhood.insert(y);
    }
  }
  nb.dist_to_h = bfs_distances(ball.graph, nb.subgroup);
  return nb;
}

std::vector<int> DeepComponentReport::deep_ids() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < deep.size(); ++i) {
    if (deep[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

DeepComponentReport deep_components(const BallComplex& ball, const Subgroup& h, int L, int threshold) {
  const GroupModel& model = *ball.model;
  const int R = ball.radius;
  if (threshold < 0) threshold = default_threshold(R, L);
  if (threshold >= R - L) {
    raise(ErrorKind::WindowTooSmall, "depth threshold " + std::to_string(threshold) + " needs R - L > threshold (R=" +
                                         std::to_string(R) + ", L=" + std::to_string(L) + ")");
  }
  DeepComponentReport rep;
  rep.R = R;
  rep.L = L;
  rep.threshold = threshold;
  rep.neighbourhood = subgroup_neighbourhood(ball, h, L);
  const auto& nb = rep.neighbourhood;
  rep.components = ball.graph.components_within(nb.neighbourhood.complement());
  std::vector<int> comp_of(ball.size(), -1);
  for (std::size_t c = 0; c < rep.components.size(); ++c) {
    int depth = 0;
    rep.components[c].for_each([&](int v) {
      comp_of[v] = static_cast<int>(c);
      depth = std::max(depth, nb.dist_to_h[v]);
    });
    rep.depth.push_back(depth);
    rep.deep.push_back(depth > threshold);
  }

  const auto deep = rep.deep_ids();
  const auto gens = symmetric_generators(model, h);
  boost::disjoint_sets_with_storage<> ds(rep.components.size());
  for (int c : deep) ds.make_set(c);
  for (int c : deep) {
    rep.components[c].for_each([&](int v) {
      for (const auto& g : gens) {
        const int w = ball.find(model.multiply(g, ball.elements[v]));
        if (w >= 0 && comp_of[w] >= 0 && rep.deep[comp_of[w]]) ds.union_set(c, comp_of[w]);
      }
    });
  }
  std::map<std::size_t, std::size_t> class_of_root;
  for (int c : deep) {
    auto [it, inserted] = class_of_root.emplace(ds.find_set(c), rep.h_orbit_classes.size());
    if (inserted) rep.h_orbit_classes.emplace_back();
    rep.h_orbit_classes[it->second].push_back(c);
  }
  rep.etilde_hat = static_cast<int>(deep.size());
  rep.e_hat = static_cast<int>(rep.h_orbit_classes.size());
  return rep;
}

namespace {

int count_classes(const GroupModel& model, const BallComplex& ball, const std::vector<Element>& gens,
                  const VertexSet& members) {
  boost::disjoint_sets_with_storage<> ds(ball.size());
  members.for_each([&](int v) { ds.make_set(v); });
  members.for_each([&](int v) {
    for (const auto& g : gens) {
      const int w = ball.find(model.multiply(g, ball.elements[v]));
      if (w >= 0 && members.contains(w)) ds.union_set(v, w);
    }
  });
  std::set<std::size_t> roots;
  members.for_each([&](int v) { roots.insert(ds.find_set(v)); });
  return static_cast<int>(roots.size());
}

}  // namespace

AlmostInvariantReport verify_almost_invariant(const GroupModel& model, const Subgroup& h,
                                              const std::vector<ElementPredicate>& sets, int R1, int R2,
                                              bool require_h_invariant) {
  AlmostInvariantReport rep;
  rep.radii = {R1, R2};
  rep.sets.resize(sets.size());
  const auto gens = symmetric_generators(model, h);
  const int k = model.generator_count();
  for (int R : rep.radii) {
    const auto ball = build_ball(model, R);
    const auto nb = subgroup_neighbourhood(ball, h, 0);
    std::vector<VertexSet> members(sets.size(), VertexSet(ball.size()));
    for (int v = 0; v < ball.size(); ++v) {
      for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i](ball.elements[v])) members[i].insert(v);
      }
    }
    for (std::size_t i = 0; i < sets.size() && rep.disjoint; ++i) {
      for (std::size_t j = i + 1; j < sets.size() && rep.disjoint; ++j) {
        const auto both = members[i] & members[j];
        if (!both.empty()) {
          rep.disjoint = false;
          rep.disjoint_witness = "sets " + std::to_string(i) + " and " + std::to_string(j) + " share " +
                                 model.format(ball.elements[both.first()]);
        }
      }
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
      auto& s = rep.sets[i];
      VertexSet boundary(ball.size());
      members[i].for_each([&](int v) {
        for (int letter = -k; letter <= k; ++letter) {
          if (letter != 0 && !sets[i](model.multiply_letter(ball.elements[v], letter))) {
            boundary.insert(v);
            break;
          }
        }
        if (require_h_invariant && s.h_invariant) {
          for (const auto& g : gens) {
            if (!sets[i](model.multiply(g, ball.elements[v]))) {
              s.h_invariant = false;
              s.invariance_witness = model.format(ball.elements[v]);
              break;
            }
          }
        }
      });
      s.orbit_classes.push_back(count_classes(model, ball, gens, members[i]));
      s.boundary_classes.push_back(count_classes(model, ball, gens, boundary));
      boundary.for_each([&](int v) { s.boundary_max_dist = std::max(s.boundary_max_dist, nb.dist_to_h[v]); });
    }
  }
  for (auto& s : rep.sets) {
    s.orbit_growth = s.orbit_classes.back() > s.orbit_classes.front();
    s.boundary_growth = s.boundary_classes.back() > s.boundary_classes.front();
  }
  return rep;
}

namespace {

// Characters on the window obtained by translating a labelling of the extended
// ball by every element of the inner ball.
CoarseSepResult translate_characters(const GroupModel& model, const BallComplex& ext, const std::vector<int>& label,
                                     const CoarseSepOptions& options, DeepComponentReport base) {
  CoarseSepResult out{CharacterSpace(), build_ball(model, options.R), -1, std::move(base), {}};
  const auto& window = out.window;
  std::vector<Character> chars;
  std::set<Character> seen;
  for (int gi = 0; gi < ext.size() && ext.length[gi] <= options.inner_radius; ++gi) {
    const Element g_inv = model.inverse(ext.elements[gi]);
    std::map<int, VertexSet> clades;
    for (int x = 0; x < window.size(); ++x) {
      const int y = ext.find(model.multiply(g_inv, window.elements[x]));
      if (y < 0) raise(ErrorKind::InternalInvariantViolation, "translate leaves the extended ball");
      auto [it, _] = clades.try_emplace(label[y], VertexSet(window.size()));
      it->second.insert(x);
    }
    if (clades.size() < 2) continue;
    Character c;
    for (auto& [_, s] : clades) c.push_back(std::move(s));
    std::sort(c.begin(), c.end());
    if (!seen.insert(c).second) continue;
    if (gi == 0) out.base_character = static_cast<int>(chars.size());
    chars.push_back(std::move(c));
    out.translates.push_back(ext.elements[gi]);
  }
  out.space = CharacterSpace(window.size(), std::move(chars));
  return out;
}

}  // namespace

CoarseSepResult coarse_sep_characters(const GroupModel& model, const Subgroup& h, const CoarseSepOptions& options) {
  const auto ext = build_ball(model, options.R + options.inner_radius);
  auto base = deep_components(ext, h, options.L, options.threshold);
  if (base.etilde_hat < 2) {
    raise(ErrorKind::NotCoarselySeparating, std::to_string(base.etilde_hat) + " deep components in the window");
  }
  const auto deep = base.deep_ids();
  const int d = static_cast<int>(deep.size());
  std::vector<int> label(ext.size(), d + 1);  // H_+ \ H
  base.neighbourhood.subgroup.for_each([&](int v) { label[v] = d; });
  for (int k = 0; k < d; ++k) base.components[deep[k]].for_each([&](int v) { label[v] = k; });
  return translate_characters(model, ext, label, options, std::move(base));
}

CoarseSepResult codimension_one_characters(const GroupModel& model, const Subgroup& h,
                                           const CoarseSepOptions& options) {
  const auto ext = build_ball(model, options.R + options.inner_radius);
  auto base = deep_components(ext, h, options.L, options.threshold);
  if (base.e_hat < 2) {
    raise(ErrorKind::NotCodimensionOne, std::to_string(base.e_hat) + " H-orbit classes of deep components");
  }
  std::vector<int> label(ext.size(), 1);
  for (int c : base.h_orbit_classes.front()) base.components[c].for_each([&](int v) { label[v] = 0; });
  return translate_characters(model, ext, label, options, std::move(base));
}

SchreierGraph schreier_graph(const GroupModel& model, const BallComplex& whole_group, const Subgroup& h) {
  const int n = whole_group.size();
  const auto gens = symmetric_generators(model, h);
  boost::disjoint_sets_with_storage<> ds(n);
  for (int v = 0; v < n; ++v) ds.make_set(v);
  for (int v = 0; v < n; ++v) {
    for (const auto& g : gens) {
      const int w = whole_group.find(model.multiply(g, whole_group.elements[v]));
      if (w < 0) raise(ErrorKind::Validation, "Schreier graph needs the whole finite group in the window");
      ds.union_set(v, w);
    }
  }
  SchreierGraph sg;
  sg.coset.assign(n, -1);
  std::map<std::size_t, int> ids;
  for (int v = 0; v < n; ++v) {
    auto [it, _] = ids.emplace(ds.find_set(v), static_cast<int>(ids.size()));
    sg.coset[v] = it->second;
  }
  std::vector<Edge> edges;
  for (auto [u, v] : whole_group.graph.edges()) {
    if (sg.coset[u] != sg.coset[v]) edges.emplace_back(sg.coset[u], sg.coset[v]);
  }
  sg.graph = Graph::from_edges_dedup(static_cast<int>(ids.size()), edges);
  sg.subgroup_coset = sg.coset[0];
  return sg;
}

}  // namespace qmedian
