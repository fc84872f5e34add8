#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cstdlib>
#include <deque>
#include <functional>
#include <span>
#include <numeric>
#include <set>

namespace qmedian::oracle {

std::vector<std::vector<int>> distances(const Graph& g) {
  const int n = g.order();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, INT_MAX));
  for (int s = 0; s < n; ++s) {
    std::deque<int> q{s};
    d[s][s] = 0;
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (int v = 0; v < n; ++v) {
        if (g.adjacent(u, v) && d[s][v] == INT_MAX) {
          d[s][v] = d[s][u] + 1;
          q.push_back(v);
        }
      }
    }
  }
  return d;
}

bool connected(const Graph& g) {
  if (g.order() == 0) return true;
  const auto d = distances(g);
  return std::none_of(d[0].begin(), d[0].end(), [](int x) { return x == INT_MAX; });
}

bool triangle_condition(const Graph& g) {
  const int n = g.order();
  const auto d = distances(g);
  for (int o = 0; o < n; ++o) {
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y) {
        if (!g.adjacent(x, y) || d[o][x] != d[o][y] || d[o][x] == 0) continue;
        bool found = false;
        for (int w = 0; w < n && !found; ++w) {
          found = g.adjacent(w, x) && g.adjacent(w, y) && d[o][w] == d[o][x] - 1;
        }
        if (!found) return false;
      }
    }
  }
  return true;
}

bool quadrangle_condition(const Graph& g) {
  const int n = g.order();
  const auto d = distances(g);
  for (int o = 0; o < n; ++o) {
    for (int z = 0; z < n; ++z) {
      const int k = d[o][z];
      if (k < 2) continue;
      for (int x = 0; x < n; ++x) {
        if (!g.adjacent(z, x) || d[o][x] != k - 1) continue;
        for (int y = x + 1; y < n; ++y) {
          if (d[x][y] != 2 || !g.adjacent(z, y) || d[o][y] != k - 1) continue;
          bool found = false;
          for (int w = 0; w < n && !found; ++w) {
            found = g.adjacent(w, x) && g.adjacent(w, y) && d[o][w] == k - 2;
          }
          if (!found) return false;
        }
      }
    }
  }
  return true;
}

bool has_induced(const Graph& g, const Graph& pattern) {
  const int n = g.order();
  const int k = pattern.order();
  if (k > n) return false;
  std::vector<int> image(k, -1);
  std::vector<char> used(n, 0);
  std::vector<int> anchor(k, -1);  // earlier pattern neighbour, if any
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < i && anchor[i] < 0; ++j) {
      if (pattern.adjacent(i, j)) anchor[i] = j;
    }
  }
  std::vector<int> all(n);
  for (int v = 0; v < n; ++v) all[v] = v;
  std::function<bool(int)> place = [&](int i) {
    if (i == k) return true;
    std::span<const int> candidates = anchor[i] < 0 ? std::span<const int>(all) : g.neighbours(image[anchor[i]]);
    for (int v : candidates) {
      if (used[v]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = g.adjacent(v, image[j]) == pattern.adjacent(i, j);
      if (!ok) continue;
      used[v] = 1;
      image[i] = v;
      if (place(i + 1)) return true;
      used[v] = 0;
    }
    return false;
  };
  return place(0);
}

bool quasi_median(const Graph& g) {
  if (!connected(g)) return false;
  if (!triangle_condition(g) || !quadrangle_condition(g)) return false;
  return !has_induced(g, graphs::complete_bipartite(2, 3)) && !has_induced(g, pattern_graph(Pattern::K4minus));
}

bool median(const Graph& g) {
  if (!connected(g)) return false;
  const int n = g.order();
  const auto d = distances(g);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      for (int c = b; c < n; ++c) {
        int medians = 0;
        for (int m = 0; m < n && medians < 2; ++m) {
          if (d[a][m] + d[m][b] == d[a][b] && d[b][m] + d[m][c] == d[b][c] && d[a][m] + d[m][c] == d[a][c]) ++medians;
        }
        if (medians != 1) return false;
      }
    }
  }
  return true;
}

bool gated(const Graph& g, const std::vector<int>& members) {
  if (members.empty()) return false;
  const auto d = distances(g);
  for (int x = 0; x < g.order(); ++x) {
    bool has_gate = false;
    for (int p : members) {
      bool ok = true;
      for (int q : members) ok = ok && d[x][q] == d[x][p] + d[p][q];
      if (ok) {
        has_gate = true;
        break;
      }
    }
    if (!has_gate) return false;
  }
  return true;
}

namespace {

std::vector<int> members_of(unsigned mask, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (mask >> v & 1u) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<unsigned> gated_subsets(const Graph& g) {
  const int n = g.order();
  std::vector<unsigned> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (gated(g, members_of(mask, n))) out.push_back(mask);
  }
  return out;
}

std::vector<int> min_gated_superset(const Graph& g, const std::vector<int>& s) {
  const int n = g.order();
  unsigned want = 0;
  for (int v : s) want |= 1u << v;
  unsigned best = (1u << n) - 1;
  for (unsigned mask : gated_subsets(g)) {
    if ((mask & want) == want && __builtin_popcount(mask) < __builtin_popcount(best)) best = mask;
  }
  return members_of(best, n);
}

std::vector<int> geodesic_closure(const Graph& g, const std::vector<int>& s) {
  const int n = g.order();
  const auto d = distances(g);
  std::vector<char> in(n, 0);
  for (int v : s) in[v] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (!in[a] || !in[b]) continue;
        for (int c = 0; c < n; ++c) {
          if (!in[c] && d[a][c] + d[c][b] == d[a][b]) in[c] = changed = true;
        }
      }
    }
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (in[v]) out.push_back(v);
  }
  return out;
}

std::vector<std::vector<int>> automorphisms(const Graph& g) {
  const int n = g.order();
  std::vector<std::vector<int>> out;
  std::vector<int> image(n, -1);
  std::vector<char> used(n, 0);
  std::function<void(int)> place = [&](int i) {
    if (i == n) {
      out.push_back(image);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v] || g.degree(v) != g.degree(i)) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = g.adjacent(i, j) == g.adjacent(v, image[j]);
      if (!ok) continue;
      used[v] = 1;
      image[i] = v;
      place(i + 1);
      used[v] = 0;
    }
  };
  place(0);
  return out;
}

namespace {

using PointSet = std::set<int>;

PointSet clade_points(const CharacterSpace& s, int c, int k) {
  const auto m = s[c][k].members();
  return PointSet(m.begin(), m.end());
}

bool intersect(const PointSet& a, const PointSet& b) {
  return std::any_of(a.begin(), a.end(), [&](int x) { return b.count(x) > 0; });
}

bool admitted_pair(const CharacterSpace& s, Flavor f, int i, int a, int j, int b) {
  const int n = s.points();
  const PointSet A = clade_points(s, i, a);
  const PointSet B = clade_points(s, j, b);
  switch (f) {
    case Flavor::All:
      return true;
    case Flavor::Buneman:
      return intersect(A, B);
    case Flavor::Relation: {
      PointSet u = A;
      u.insert(B.begin(), B.end());
      return intersect(A, B) || static_cast<int>(u.size()) == n;
    }
    case Flavor::Coherent:
      for (int da = 0; da < s.clade_count(i); ++da) {
        if (da == a) continue;
        for (int db = 0; db < s.clade_count(j); ++db) {
          if (db == b) continue;
          PointSet ea, eb;
          for (int x = 0; x < n; ++x) {
            if (s.clade_of(i, x) != da) ea.insert(x);
            if (s.clade_of(j, x) != db) eb.insert(x);
          }
          if (!intersect(ea, eb)) return false;
        }
      }
      return true;
  }
  return false;
}

}  // namespace

std::vector<Selector> selectors(const CharacterSpace& space, Flavor flavor) {
  const int m = space.size();
  std::vector<Selector> out;
  Selector sel(m, 0);
  while (true) {
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      for (int j = i + 1; j < m && ok; ++j) ok = admitted_pair(space, flavor, i, sel[i], j, sel[j]);
    }
    if (ok) out.push_back(sel);
    int i = m - 1;
    while (i >= 0 && ++sel[i] == space.clade_count(i)) sel[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

namespace {

bool one_apart(const Selector& a, const Selector& b) {
  int diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] != b[i];
  return diff == 1;
}

}  // namespace

std::vector<int> selector_distances(const std::vector<Selector>& nodes, int source) {
  std::vector<int> d(nodes.size(), INT_MAX);
  std::deque<int> q{source};
  d[source] = 0;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      if (d[v] == INT_MAX && one_apart(nodes[u], nodes[v])) {
        d[v] = d[u] + 1;
        q.push_back(static_cast<int>(v));
      }
    }
  }
  return d;
}

std::vector<std::vector<int>> selector_components(const std::vector<Selector>& nodes) {
  std::vector<int> comp(nodes.size(), -1);
  std::vector<std::vector<int>> out;
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    if (comp[s] >= 0) continue;
    const auto d = selector_distances(nodes, static_cast<int>(s));
    out.emplace_back();
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      if (d[v] != INT_MAX) {
        comp[v] = static_cast<int>(out.size()) - 1;
        out.back().push_back(static_cast<int>(v));
      }
    }
  }
  return out;
}

namespace {

// Points 0..n-1; `removed` marks H^{+L}; `shift` is left translation by the
// H generator (-1 outside the window), applied in both directions.
EndsCount count_window(int n, const std::vector<std::vector<int>>& adj, const std::vector<char>& removed,
                       const std::vector<int>& depth, int threshold, const std::vector<int>& shift) {
  std::vector<int> comp(n, -1);
  EndsCount out;
  std::vector<int> max_depth;
  for (int s = 0; s < n; ++s) {
    if (removed[s] || comp[s] >= 0) continue;
    const int c = out.components++;
    max_depth.push_back(0);
    std::deque<int> q{s};
    comp[s] = c;
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      max_depth[c] = std::max(max_depth[c], depth[u]);
      for (int v : adj[u]) {
        if (!removed[v] && comp[v] < 0) {
          comp[v] = c;
          q.push_back(v);
        }
      }
    }
  }
  std::vector<int> parent(out.components);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int u = 0; u < n; ++u) {
    const int v = shift[u];
    if (v < 0 || comp[u] < 0 || comp[v] < 0) continue;
    if (max_depth[comp[u]] > threshold && max_depth[comp[v]] > threshold) parent[find(comp[u])] = find(comp[v]);
  }
  std::set<int> roots;
  for (int c = 0; c < out.components; ++c) {
    if (max_depth[c] > threshold) {
      ++out.deep;
      roots.insert(find(c));
    }
  }
  out.classes = static_cast<int>(roots.size());
  return out;
}

}  // namespace

EndsCount z2_axis_window(int R, int L, int threshold) {
  std::vector<std::pair<int, int>> pts;
  for (int x = -R; x <= R; ++x) {
    for (int y = -R; y <= R; ++y) {
      if (std::abs(x) + std::abs(y) <= R) pts.emplace_back(x, y);
    }
  }
  const int n = static_cast<int>(pts.size());
  auto id = [&](int x, int y) {
    auto it = std::lower_bound(pts.begin(), pts.end(), std::make_pair(x, y));
    return it != pts.end() && *it == std::make_pair(x, y) ? static_cast<int>(it - pts.begin()) : -1;
  };
  std::vector<std::vector<int>> adj(n);
  std::vector<char> removed(n);
  std::vector<int> depth(n), shift(n);
  for (int i = 0; i < n; ++i) {
    const auto [x, y] = pts[i];
    for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      const int j = id(x + dx, y + dy);
      if (j >= 0) adj[i].push_back(j);
    }
    depth[i] = std::abs(y);
    removed[i] = std::abs(y) <= L;
    shift[i] = id(x + 1, y);
  }
  return count_window(n, adj, removed, depth, threshold, shift);
}

EndsCount free2_axis_window(int R, int L, int threshold) {
  // Letters: 'a', 'A' = a^-1, 'b', 'B'.
  auto inverse = [](char c) { return static_cast<char>(std::isupper(c) ? std::tolower(c) : std::toupper(c)); };
  std::vector<std::string> words{""};
  for (std::size_t head = 0; head < words.size(); ++head) {
    const std::string w = words[head];
    if (static_cast<int>(w.size()) == R) continue;
    for (char c : std::string("aAbB")) {
      if (!w.empty() && w.back() == inverse(c)) continue;
      words.push_back(w + c);
    }
  }
  std::sort(words.begin(), words.end());
  const int n = static_cast<int>(words.size());
  auto id = [&](const std::string& w) {
    auto it = std::lower_bound(words.begin(), words.end(), w);
    return it != words.end() && *it == w ? static_cast<int>(it - words.begin()) : -1;
  };
  auto times = [&](std::string w, char c) {
    if (!w.empty() && w.back() == inverse(c)) {
      w.pop_back();
    } else {
      w.push_back(c);
    }
    return w;
  };
  std::vector<std::vector<int>> adj(n);
  std::vector<char> removed(n);
  std::vector<int> depth(n), shift(n);
  for (int i = 0; i < n; ++i) {
    const std::string& w = words[i];
    for (char c : std::string("aAbB")) {
      const int j = id(times(w, c));
      if (j >= 0) adj[i].push_back(j);
    }
    std::size_t k = 0;
    while (k < w.size() && (w[k] == 'a' || w[k] == 'A')) ++k;
    depth[i] = static_cast<int>(w.size() - k);
    removed[i] = depth[i] <= L;
    const std::string left = (!w.empty() && w.front() == 'A') ? w.substr(1) : "a" + w;
    shift[i] = id(left);
  }
  return count_window(n, adj, removed, depth, threshold, shift);
}

}  // namespace qmedian::oracle
