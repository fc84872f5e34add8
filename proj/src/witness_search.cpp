#include <algorithm>
#include <functional>

#include "qmedian/error.hpp"
#include "qmedian/quasi_cubulation.hpp"

namespace qmedian {

std::string_view to_string(WitnessProperty p) {
  switch (p) {
    case WitnessProperty::BunemanDisconnected: return "buneman_disconnected";
    case WitnessProperty::RelationDisconnected: return "relation_disconnected";
    case WitnessProperty::RelationNotIsometric: return "relation_not_isometric";
    case WitnessProperty::BunemanSmallerQm: return "buneman_smaller_qm";
  }
  return "?";
}

WitnessProperty parse_witness_property(std::string_view s) {
  for (auto p : {WitnessProperty::BunemanDisconnected, WitnessProperty::RelationDisconnected,
                 WitnessProperty::RelationNotIsometric, WitnessProperty::BunemanSmallerQm}) {
    if (to_string(p) == s) return p;
  }
  raise(ErrorKind::Validation, "unknown witness property '" + std::string(s) + "'");
}

namespace {

bool isometric_to_hamming(const SelectorGraph& sg) {
  const auto& d = sg.graph.distances();
  for (int a = 0; a < sg.graph.order(); ++a) {
    for (int b = a + 1; b < sg.graph.order(); ++b) {
      if (d(a, b) != disagreements(sg.nodes[a], sg.nodes[b])) return false;
    }
  }
  return true;
}

}  // namespace

bool has_property(const CharacterSpace& space, WitnessProperty p) {
  const auto coherent = build_selector_graph(space, Flavor::Coherent);
  const auto qm = pointed_component(coherent);
  const auto buneman = build_selector_graph(space, Flavor::Buneman);
  switch (p) {
    case WitnessProperty::BunemanDisconnected:
      return !buneman.graph.is_connected();
    case WitnessProperty::RelationDisconnected: {
      const auto relation = build_selector_graph(space, Flavor::Relation);
      return relation.nodes == buneman.nodes && !relation.graph.is_connected();
    }
    case WitnessProperty::RelationNotIsometric: {
      const auto relation = build_selector_graph(space, Flavor::Relation);
      return relation.nodes == buneman.nodes && relation.graph.is_connected() && !isometric_to_hamming(relation);
    }
    case WitnessProperty::BunemanSmallerQm:
      return buneman.graph.is_connected() && buneman.nodes.size() < qm.nodes.size() &&
             is_quasi_median(buneman.graph);
  }
  return false;
}

namespace {

// Set partitions of 0..n-1 into 2..max_blocks blocks, as restricted growth
// strings in lexicographic order.
std::vector<Character> partitions(int n, int max_blocks) {
  std::vector<Character> out;
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int blocks) {
    if (pos == n) {
      if (blocks < 2) return;
      Character c(blocks, VertexSet(n));
      for (int x = 0; x < n; ++x) c[rgs[x]].insert(x);
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
      return;
    }
    for (int b = 0; b <= std::min(blocks, max_blocks - 1); ++b) {
      rgs[pos] = b;
      rec(pos + 1, std::max(blocks, b + 1));
    }
  };
  rgs[0] = 0;
  rec(1, 1);
  return out;
}

}  // namespace

WitnessResult witness_search(WitnessProperty p, const WitnessBounds& bounds) {
  std::size_t examined = 0;
  for (int n = 2; n <= bounds.max_points; ++n) {
    const auto parts = partitions(n, bounds.max_clades);
    for (int k = 1; k <= bounds.max_characters; ++k) {
      if (k > static_cast<int>(parts.size())) break;
      std::vector<int> pick(k);
      std::function<std::optional<CharacterSpace>(int, int)> rec = [&](int depth, int from) -> std::optional<CharacterSpace> {
        if (depth == k) {
          if (++examined > bounds.max_candidates) return std::nullopt;
          std::vector<Character> chars;
          for (int i : pick) chars.push_back(parts[i]);
          CharacterSpace space(n, std::move(chars));
          if (has_property(space, p)) return space;
          return std::nullopt;
        }
        for (int i = from; i < static_cast<int>(parts.size()); ++i) {
          pick[depth] = i;
          if (auto found = rec(depth + 1, i + 1)) return found;
          if (examined > bounds.max_candidates) return std::nullopt;
        }
        return std::nullopt;
      };
      if (auto found = rec(0, 0)) return {std::move(*found), examined};
      if (examined > bounds.max_candidates) break;
    }
    if (examined > bounds.max_candidates) break;
  }
  raise(ErrorKind::NotFound, std::string(to_string(p)) + " not found with |X| <= " + std::to_string(bounds.max_points) +
                                 ", <= " + std::to_string(bounds.max_characters) + " characters, <= " +
                                 std::to_string(bounds.max_clades) + " clades (" + std::to_string(examined) +
                                 " spaces examined)");
}

}  // namespace qmedian
