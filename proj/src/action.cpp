#include "qmedian/action.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "qmedian/error.hpp"

namespace qmedian {

namespace {

void check_permutation(int n, const Permutation& p) {
  if (static_cast<int>(p.size()) != n) raise(ErrorKind::Validation, "permutation has the wrong length");
  std::vector<char> hit(n, 0);
  for (int v : p) {
    if (v < 0 || v >= n || hit[v]) raise(ErrorKind::Validation, "not a permutation");
    hit[v] = 1;
  }
}

Permutation compose(const Permutation& a, const Permutation& b) {  // a after b
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

}  // namespace

Closure group_closure(int n, const std::vector<Permutation>& generators, std::size_t cap) {
  for (const auto& g : generators) check_permutation(n, g);
  Closure c;
  Permutation id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  std::set<Permutation> seen{id};
  c.elements.push_back(id);
  for (std::size_t head = 0; head < c.elements.size(); ++head) {
    for (const auto& g : generators) {
      auto p = compose(g, c.elements[head]);
      if (seen.count(p)) continue;
      if (c.elements.size() >= cap) {
        c.complete = false;
        return c;
      }
      seen.insert(p);
      c.elements.push_back(std::move(p));
    }
  }
  return c;
}

GraphAction::GraphAction(Graph graph, std::vector<Permutation> generators, std::size_t cap)
    : graph_(std::move(graph)), generators_(std::move(generators)) {
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    const auto& g = generators_[k];
    check_permutation(graph_.order(), g);
    for (auto [u, v] : graph_.edges()) {
      if (!graph_.adjacent(g[u], g[v])) {
        raise(ErrorKind::NotAutomorphism, "generator " + std::to_string(k) + " maps edge [" + std::to_string(u) + "," +
                                              std::to_string(v) + "] to a non-edge");
      }
    }
  }
  closure_ = group_closure(graph_.order(), generators_, cap);
}

std::vector<int> act_on_hyperplanes(const HyperplaneDecomposition& d, const Permutation& g) {
  std::vector<int> out(d.count());
  const auto edges = d.graph().edges();
  for (int h = 0; h < d.count(); ++h) {
    const auto [u, v] = edges[d[h].edges.front()];
    out[h] = d.hyperplane_of_edge(g[u], g[v]);
  }
  return out;
}

SectorId act_on_sector(const HyperplaneDecomposition& d, const Permutation& g, SectorId s) {
  const int x = d.sector(s).first();
  const auto edges = d.graph().edges();
  const auto [u, v] = edges[d[s.hyperplane].edges.front()];
  const int h = d.hyperplane_of_edge(g[u], g[v]);
  return {h, d[h].sector_of[g[x]]};
}

ActionReport analyze_action(const GraphAction& action) {
  return analyze_action(action, HyperplaneDecomposition(action.graph()));
}

ActionReport analyze_action(const GraphAction& action, const HyperplaneDecomposition& d) {
  const auto& elements = action.closure().elements;
  const Graph& g = action.graph();
  ActionReport r;
  r.closure_size = elements.size();
  r.closure_complete = action.closure().complete;

  std::vector<std::vector<int>> hyper_images;
  for (const auto& e : elements) hyper_images.push_back(act_on_hyperplanes(d, e));
  std::vector<int> orbit_of(d.count(), -1);
  for (int h = 0; h < d.count(); ++h) {
    if (orbit_of[h] >= 0) continue;
    std::set<int> orbit;
    for (const auto& img : hyper_images) orbit.insert(img[h]);
    for (int k : orbit) orbit_of[k] = static_cast<int>(r.hyperplane_orbits.size());
    r.hyperplane_orbits.emplace_back(orbit.begin(), orbit.end());
  }
  r.hyperplane_transitive = r.hyperplane_orbits.size() == 1;

  // Vertex orbits meeting every sector.
  r.convex_minimal = true;
  std::vector<char> done(g.order(), 0);
  for (int x = 0; x < g.order() && r.convex_minimal; ++x) {
    if (done[x]) continue;
    VertexSet orbit(g.order());
    for (const auto& e : elements) orbit.insert(e[x]);
    orbit.for_each([&](int v) { done[v] = 1; });
    for (const auto& hp : d.hyperplanes()) {
      for (const auto& s : hp.sectors) {
        if (!orbit.intersects(s)) r.convex_minimal = false;
      }
    }
  }

  // Every prism has a translate inside every sector.
  const auto prisms = enumerate_prisms(d);
  r.strongly_convex_minimal = true;
  for (const auto& p : prisms) {
    std::vector<VertexSet> images;
    for (const auto& e : elements) {
      VertexSet img(g.order());
      p.vertices.for_each([&](int v) { img.insert(e[v]); });
      images.push_back(std::move(img));
    }
    for (const auto& hp : d.hyperplanes()) {
      for (const auto& s : hp.sectors) {
        const bool fits = std::any_of(images.begin(), images.end(), [&](const VertexSet& i) { return i.is_subset_of(s); });
        if (!fits) r.strongly_convex_minimal = false;
      }
    }
    if (!r.strongly_convex_minimal) break;
  }

  for (int h = 0; h < d.count(); ++h) {
    const int q = static_cast<int>(d[h].sectors.size());
    r.q.push_back(q);
    std::vector<int> orbit_id(q, -1);
    int p = 0;
    for (int s = 0; s < q; ++s) {
      if (orbit_id[s] >= 0) continue;
      for (std::size_t k = 0; k < elements.size(); ++k) {
        if (hyper_images[k][h] != h) continue;
        const auto img = act_on_sector(d, elements[k], {h, s});
        if (orbit_id[img.index] < 0) orbit_id[img.index] = p;
      }
      ++p;
    }
    r.p.push_back(p);
    for (std::size_t k = 0; k < elements.size() && !r.has_hyperplane_inversion; ++k) {
      if (hyper_images[k][h] != h) continue;
      for (int s = 0; s < q; ++s) {
        if (act_on_sector(d, elements[k], {h, s}).index != s) {
          r.has_hyperplane_inversion = true;
          r.inversion_element = static_cast<int>(k);
          r.inversion_hyperplane = h;
          break;
        }
      }
    }
  }
  return r;
}

namespace {

int sector_orbit_count(const HyperplaneDecomposition& d, const std::vector<Permutation>& elements) {
  std::set<SectorId> seen;
  int orbits = 0;
  for (const auto& s : d.all_sectors()) {
    if (seen.count(s)) continue;
    ++orbits;
    for (const auto& e : elements) seen.insert(act_on_sector(d, e, s));
  }
  return orbits;
}

}  // namespace

CoreResult convex_minimal_core(const GraphAction& action) {
  const HyperplaneDecomposition d(action.graph());
  const Graph& g = action.graph();
  const auto& elements = action.closure().elements;
  CoreResult best;
  std::optional<HyperplaneDecomposition> best_dec;
  std::vector<Permutation> best_perms;
  for (int x = 0; x < g.order(); ++x) {
    VertexSet orbit(g.order());
    for (const auto& e : elements) orbit.insert(e[x]);
    const VertexSet hull = convex_hull(d, orbit);
    std::vector<int> old_ids;
    Graph sub = g.induced(hull, &old_ids);
    std::vector<int> new_id(g.order(), -1);
    for (std::size_t i = 0; i < old_ids.size(); ++i) new_id[old_ids[i]] = static_cast<int>(i);
    std::vector<Permutation> restricted;
    for (const auto& e : elements) {
      Permutation p(old_ids.size());
      for (std::size_t i = 0; i < old_ids.size(); ++i) p[i] = new_id[e[old_ids[i]]];
      restricted.push_back(std::move(p));
    }
    HyperplaneDecomposition sub_d(sub);
    const int orbits = sector_orbit_count(sub_d, restricted);
    const bool better = best.base < 0 || orbits < best.sector_orbits ||
                        (orbits == best.sector_orbits && hull.count() < best.core.count());
    if (better) {
      best.base = x;
      best.core = hull;
      best.sector_orbits = orbits;
      best_perms = std::move(restricted);
      best_dec.emplace(std::move(sub_d));
    }
  }
  if (best.base >= 0) {
    GraphAction restricted_action(best_dec->graph(), best_perms);
    best.restricted_convex_minimal = analyze_action(restricted_action, *best_dec).convex_minimal;
  }
  return best;
}

GraphAction lift_action(const GraphAction& action, const PrismGraph& pg) {
  std::vector<Permutation> lifted;
  for (const auto& gen : action.generators()) lifted.push_back(lift_to_prisms(pg, gen));
  return GraphAction(pg.graph, std::move(lifted));
}

MonohypReport monohyp_prism_check(const GraphAction& action) {
  const HyperplaneDecomposition d(action.graph());
  const auto base = analyze_action(action, d);
  if (!base.hyperplane_transitive || !base.convex_minimal) {
    raise(ErrorKind::PrerequisiteFailed, "action must be hyperplane-transitive and convex-minimal");
  }
  const auto pg = build_prism_graph(d);
  const auto lifted = lift_action(action, pg);
  const auto bij = prism_hyperplane_bijection(d, pg);
  MonohypReport r;
  r.strongly_convex_minimal = base.strongly_convex_minimal;
  r.lifted_convex_minimal = analyze_action(lifted, *bij.prism_decomposition).convex_minimal;
  r.agree = r.strongly_convex_minimal == r.lifted_convex_minimal;
  r.lifted_inversion_free = no_hyperplane_inversion_check(pg, bij, action.closure().elements).no_inversion;
  return r;
}

std::optional<int> stabilised_prism(const GraphAction& action, const PrismGraph& pg) {
  std::vector<std::vector<int>> lifted;
  for (const auto& e : action.closure().elements) lifted.push_back(lift_to_prisms(pg, e));
  for (int i = 0; i < static_cast<int>(pg.nodes.size()); ++i) {
    if (std::all_of(lifted.begin(), lifted.end(), [&](const std::vector<int>& l) { return l[i] == i; })) return i;
  }
  return std::nullopt;
}

std::optional<int> fixed_vertex(const GraphAction& action) {
  const auto& elements = action.closure().elements;
  for (int x = 0; x < action.graph().order(); ++x) {
    if (std::all_of(elements.begin(), elements.end(), [&](const Permutation& p) { return p[x] == x; })) return x;
  }
  return std::nullopt;
}

}  // namespace qmedian
