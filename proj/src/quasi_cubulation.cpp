#include "qmedian/quasi_cubulation.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "qmedian/error.hpp"

namespace qmedian {

CharacterSpace::CharacterSpace(int points, const std::vector<std::vector<std::vector<int>>>& characters)
    : points_(points) {
  if (points < 1) raise(ErrorKind::Validation, "a character space needs at least one point");
  std::vector<Character> chars;
  for (std::size_t i = 0; i < characters.size(); ++i) {
    Character c;
    for (const auto& clade : characters[i]) {
      VertexSet s(points);
      for (int x : clade) {
        if (x < 0 || x >= points) {
          raise(ErrorKind::Validation, "character " + std::to_string(i) + ": point " + std::to_string(x) + " out of range");
        }
        if (s.contains(x)) {
          raise(ErrorKind::Validation, "character " + std::to_string(i) + ": point " + std::to_string(x) + " repeated");
        }
        s.insert(x);
      }
      c.push_back(std::move(s));
    }
    chars.push_back(std::move(c));
  }
  *this = CharacterSpace(points, std::move(chars));
}

CharacterSpace::CharacterSpace(int points, std::vector<Character> characters) : points_(points) {
  if (points < 1) raise(ErrorKind::Validation, "a character space needs at least one point");
  std::set<Character> seen;
  for (std::size_t i = 0; i < characters.size(); ++i) {
    auto& c = characters[i];
    const std::string where = "character " + std::to_string(i);
    if (c.size() < 2) raise(ErrorKind::Validation, where + " has fewer than two clades");
    VertexSet cover(points);
    for (const auto& clade : c) {
      if (clade.universe() != static_cast<std::size_t>(points)) raise(ErrorKind::Validation, where + ": wrong universe");
      if (clade.empty()) raise(ErrorKind::Validation, where + " has an empty clade");
      if (clade.intersects(cover)) raise(ErrorKind::Validation, where + " has overlapping clades");
      cover |= clade;
    }
    if (!cover.is_full()) raise(ErrorKind::Validation, where + " does not cover every point");
    std::sort(c.begin(), c.end());
    if (seen.insert(c).second) characters_.push_back(std::move(c));
  }
  index();
}

void CharacterSpace::index() {
  clade_of_.assign(characters_.size(), std::vector<int>(points_, -1));
  for (std::size_t i = 0; i < characters_.size(); ++i) {
    for (std::size_t k = 0; k < characters_[i].size(); ++k) {
      characters_[i][k].for_each([&](int x) { clade_of_[i][x] = static_cast<int>(k); });
    }
  }
}

std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::Coherent: return "coherent";
    case Flavor::Buneman: return "buneman";
    case Flavor::Relation: return "relation";
    case Flavor::All: return "all";
  }
  return "?";
}

Flavor parse_flavor(std::string_view s) {
  for (Flavor f : {Flavor::Coherent, Flavor::Buneman, Flavor::Relation, Flavor::All}) {
    if (to_string(f) == s) return f;
  }
  raise(ErrorKind::Validation, "unknown flavor '" + std::string(s) + "'");
}

std::vector<VertexSet> extensions(const CharacterSpace& space, int character, int clade) {
  std::vector<VertexSet> out;
  const auto& c = space[character];
  for (int k = 0; k < static_cast<int>(c.size()); ++k) {
    if (k != clade) out.push_back(c[k].complement());
  }
  return out;
}

bool compatible(const CharacterSpace& space, Flavor flavor, int i, int a, int j, int b) {
  const VertexSet& A = space[i][a];
  const VertexSet& B = space[j][b];
  switch (flavor) {
    case Flavor::All:
      return true;
    case Flavor::Buneman:
      return A.intersects(B);
    case Flavor::Relation:
      return A.intersects(B) || (A | B).is_full();
    case Flavor::Coherent:
      // Extensions X\D and X\E are disjoint exactly when D ∪ E = X.
      for (int d = 0; d < space.clade_count(i); ++d) {
        if (d == a) continue;
        for (int e = 0; e < space.clade_count(j); ++e) {
          if (e != b && (space[i][d] | space[j][e]).is_full()) return false;
        }
      }
      return true;
  }
  return false;
}

CoherenceResult is_coherent(const CharacterSpace& space, const Selector& sel, Flavor flavor) {
  for (int i = 0; i < space.size(); ++i) {
    for (int j = i + 1; j < space.size(); ++j) {
      if (!compatible(space, flavor, i, sel[i], j, sel[j])) return {false, i, j};
    }
  }
  return {};
}

Selector pointed_selector(const CharacterSpace& space, int x) {
  Selector s(space.size());
  for (int i = 0; i < space.size(); ++i) s[i] = space.clade_of(i, x);
  return s;
}

int disagreements(const Selector& a, const Selector& b) {
  int n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a[i] != b[i];
  return n;
}

namespace {

struct SelectorSearch {
  const CharacterSpace& space;
  std::size_t cap;
  std::vector<int> order;
  std::vector<int> offset;
  std::vector<char> table;
  int total = 0;
  Selector current;
  std::vector<Selector> out;

  bool ok(int i, int a, int j, int b) const { return table[(offset[i] + a) * total + offset[j] + b] != 0; }

  void run(std::size_t depth) {
    if (depth == order.size()) {
      if (out.size() >= cap) {
        raise(ErrorKind::SizeLimitExceeded, "more than " + std::to_string(cap) + " admitted selectors");
      }
      out.push_back(current);
      return;
    }
    const int i = order[depth];
    for (int a = 0; a < space.clade_count(i); ++a) {
      bool fits = true;
      for (std::size_t k = 0; k < depth && fits; ++k) fits = ok(i, a, order[k], current[order[k]]);
      if (!fits) continue;
      current[i] = a;
      run(depth + 1);
    }
    current[i] = -1;
  }
};

}  // namespace

SelectorGraph build_selector_graph(const CharacterSpace& space, Flavor flavor, std::size_t cap) {
  SelectorSearch search{space, cap, {}, {}, {}, 0, Selector(space.size(), -1), {}};
  search.order.resize(space.size());
  std::iota(search.order.begin(), search.order.end(), 0);
  std::stable_sort(search.order.begin(), search.order.end(),
                   [&](int a, int b) { return space.clade_count(a) > space.clade_count(b); });
  for (int i = 0; i < space.size(); ++i) {
    search.offset.push_back(search.total);
    search.total += space.clade_count(i);
  }
  search.table.assign(static_cast<std::size_t>(search.total) * search.total, 1);
  for (int i = 0; i < space.size(); ++i) {
    for (int j = 0; j < space.size(); ++j) {
      if (i == j) continue;
      for (int a = 0; a < space.clade_count(i); ++a) {
        for (int b = 0; b < space.clade_count(j); ++b) {
          search.table[(search.offset[i] + a) * search.total + search.offset[j] + b] =
              compatible(space, flavor, i, a, j, b);
        }
      }
    }
  }
  search.run(0);

  SelectorGraph sg;
  sg.flavor = flavor;
  sg.nodes = std::move(search.out);
  std::sort(sg.nodes.begin(), sg.nodes.end());
  for (std::size_t k = 0; k < sg.nodes.size(); ++k) sg.index.emplace(sg.nodes[k], static_cast<int>(k));
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < sg.nodes.size(); ++k) {
    Selector s = sg.nodes[k];
    for (int i = 0; i < space.size(); ++i) {
      const int own = s[i];
      for (int c = own + 1; c < space.clade_count(i); ++c) {
        s[i] = c;
        const int other = sg.find(s);
        if (other >= 0) edges.emplace_back(static_cast<int>(k), other);
      }
      s[i] = own;
    }
  }
  sg.graph = Graph::from_edges(static_cast<int>(sg.nodes.size()), edges);
  for (int x = 0; x < space.points(); ++x) sg.pointed.push_back(sg.find(pointed_selector(space, x)));
  return sg;
}

SelectorGraph pointed_component(const SelectorGraph& sg) {
  const auto comps = sg.graph.components();
  std::set<int> hit;
  VertexSet keep(sg.graph.order());
  for (int node : sg.pointed) {
    if (node < 0) continue;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      if (comps[c].contains(node)) {
        hit.insert(static_cast<int>(c));
        keep = comps[c];
      }
    }
  }
  if (hit.size() > 1) {
    raise(ErrorKind::PointedSplit, "pointed selectors lie in " + std::to_string(hit.size()) + " components");
  }
  SelectorGraph out;
  out.flavor = sg.flavor;
  std::vector<int> old_ids;
  out.graph = sg.graph.induced(keep, &old_ids);
  for (std::size_t k = 0; k < old_ids.size(); ++k) {
    out.nodes.push_back(sg.nodes[old_ids[k]]);
    out.index.emplace(out.nodes.back(), static_cast<int>(k));
  }
  for (int node : sg.pointed) out.pointed.push_back(node < 0 ? -1 : out.find(sg.nodes[node]));
  return out;
}

CharacterHyperplaneMap character_hyperplane_map(const CharacterSpace& space, const SelectorGraph& component) {
  CharacterHyperplaneMap m{HyperplaneDecomposition(component.graph), {}, {}, {}};
  const auto& d = m.decomposition;
  const auto edges = component.graph.edges();
  auto label = [&](int e) {
    const auto& a = component.nodes[edges[e].first];
    const auto& b = component.nodes[edges[e].second];
    for (int i = 0; i < space.size(); ++i) {
      if (a[i] != b[i]) return i;
    }
    return -1;
  };
  for (int h = 0; h < d.count(); ++h) {
    const int c = label(d[h].edges.front());
    for (int e : d[h].edges) {
      if (label(e) != c) raise(ErrorKind::InternalInvariantViolation, "hyperplane " + std::to_string(h) + " mixes characters");
    }
    if (!m.character_hyperplane.emplace(c, h).second) {
      raise(ErrorKind::InternalInvariantViolation, "character " + std::to_string(c) + " labels two hyperplanes");
    }
    m.hyperplane_character.push_back(c);
    std::vector<int> clades;
    std::set<int> distinct;
    for (const auto& sec : d[h].sectors) {
      const int clade = component.nodes[sec.first()][c];
      bool uniform = true;
      sec.for_each([&](int v) { uniform = uniform && component.nodes[v][c] == clade; });
      if (!uniform || !distinct.insert(clade).second) {
        raise(ErrorKind::InternalInvariantViolation, "sectors of hyperplane " + std::to_string(h) + " do not match clades");
      }
      clades.push_back(clade);
    }
    m.sector_clade.push_back(std::move(clades));
  }
  // Every character on which two component selectors disagree labels a
  // hyperplane.
  for (int i = 0; i < space.size(); ++i) {
    std::set<int> realised;
    for (const auto& s : component.nodes) realised.insert(s[i]);
    if (realised.size() >= 2 && !m.character_hyperplane.count(i)) {
      raise(ErrorKind::InternalInvariantViolation, "character " + std::to_string(i) + " crosses no hyperplane");
    }
  }
  return m;
}

CharacterSpace sector_characters(const HyperplaneDecomposition& d) {
  std::vector<Character> chars;
  for (const auto& hp : d.hyperplanes()) chars.push_back(hp.sectors);
  return CharacterSpace(d.graph().order(), std::move(chars));
}

}  // namespace qmedian
