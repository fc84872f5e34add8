#include <algorithm>
#include <cstdint>

#include "qmedian/error.hpp"
#include "qmedian/qm_structure.hpp"

namespace qmedian {

namespace {

std::vector<VertexSet> level_sets(const Graph& g, int o) {
  const auto& d = g.distances();
  std::vector<VertexSet> levels;
  for (int v = 0; v < g.order(); ++v) {
    const int k = d(o, v);
    if (k >= static_cast<int>(levels.size())) levels.resize(k + 1, VertexSet(g.order()));
    levels[k].insert(v);
  }
  return levels;
}

void push_capped(std::vector<std::vector<int>>& out, std::vector<int> w, std::size_t cap) {
  if (out.size() < cap) out.push_back(std::move(w));
}

}  // namespace

RecognitionReport recognize(const Graph& g, const RecognitionOptions& options) {
  if (!g.is_connected()) raise(ErrorKind::Disconnected, "recognition needs a connected graph");
  RecognitionReport r;
  const auto& d = g.distances();
  const std::size_t cap = options.max_witnesses;
  bool triangle_ok = true;
  bool quadrangle_ok = true;

  for (int o = 0; o < g.order(); ++o) {
    const auto levels = level_sets(g, o);
    for (auto [x, y] : g.edges()) {
      const int k = d(o, x);
      if (k == 0 || d(o, y) != k) continue;
      if (!(g.neighbourhood(x) & g.neighbourhood(y)).intersects(levels[k - 1])) {
        triangle_ok = false;
        push_capped(r.triangle_violations, {o, x, y}, cap);
      }
    }
    for (int z = 0; z < g.order(); ++z) {
      const int k = d(o, z);
      if (k < 2) continue;
      const auto down = (g.neighbourhood(z) & levels[k - 1]).members();
      for (std::size_t i = 0; i < down.size(); ++i) {
        for (std::size_t j = i + 1; j < down.size(); ++j) {
          const int x = down[i], y = down[j];
          if (g.adjacent(x, y)) continue;
          if (!(g.neighbourhood(x) & g.neighbourhood(y)).intersects(levels[k - 2])) {
            quadrangle_ok = false;
            push_capped(r.quadrangle_violations, {o, x, y, z}, cap);
          }
        }
      }
    }
  }

  const std::size_t limit = std::max<std::size_t>(cap, 1);
  auto k23 = find_induced(g, Pattern::K23, limit);
  auto k4m = find_induced(g, Pattern::K4minus, limit);
  const bool forbidden_free = k23.empty() && k4m.empty();
  if (k23.size() > cap) k23.resize(cap);
  if (k4m.size() > cap) k4m.resize(cap);
  r.forbidden_k23 = std::move(k23);
  r.forbidden_k4minus = std::move(k4m);

  r.triangle_free = true;
  for (auto [x, y] : g.edges()) {
    if ((g.neighbourhood(x) & g.neighbourhood(y)).count() > 0) {
      r.triangle_free = false;
      break;
    }
  }
  r.is_weakly_modular = triangle_ok && quadrangle_ok;
  r.is_quasi_median = r.is_weakly_modular && forbidden_free;
  r.is_median = r.is_quasi_median && r.triangle_free;
  return r;
}

bool is_quasi_median(const Graph& g) { return g.is_connected() && recognize(g, {1}).is_quasi_median; }

bool is_median(const Graph& g) { return g.is_connected() && recognize(g, {1}).is_median; }

namespace {

constexpr std::int64_t kPrime = 1'000'000'007;

std::int64_t inverse_mod(std::int64_t a) {
  std::int64_t result = 1, e = kPrime - 2;
  a %= kPrime;
  while (e > 0) {
    if (e & 1) result = result * a % kPrime;
    a = a * a % kPrime;
    e >>= 1;
  }
  return result;
}

int rank_mod_p(std::vector<std::vector<std::int64_t>> rows, int cols) {
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::int64_t inv = inverse_mod(rows[rank][c]);
    for (auto& v : rows[rank]) v = v * inv % kPrime;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::int64_t f = rows[r][c];
      for (int k = c; k < cols; ++k) {
        rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % kPrime + kPrime) % kPrime;
      }
    }
    ++rank;
  }
  return rank;
}

// Boundary of a cycle v0 v1 ... v(k-1) as a signed edge vector, each edge
// oriented from smaller to larger id.
std::vector<std::int64_t> cycle_boundary(const Graph& g, std::span<const int> cyc) {
  std::vector<std::int64_t> row(g.size(), 0);
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    const int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
    const int e = g.edge_index(a, b);
    row[e] = (row[e] + (a < b ? 1 : kPrime - 1)) % kPrime;
  }
  return row;
}

}  // namespace

LocalConditionsReport check_local_conditions(const Graph& g) {
  LocalConditionsReport r;
  r.forbidden_free = find_induced(g, Pattern::K23, 1).empty() && find_induced(g, Pattern::K4minus, 1).empty();

  // Q3minus pattern: hypercube minus vertex 7, whose neighbours 3, 5, 6 are
  // the degree-2 vertices.
  r.cube_condition = true;
  for (const auto& emb : find_induced(g, Pattern::Q3minus)) {
    VertexSet image(g.order(), std::span<const int>(emb));
    VertexSet candidates = g.neighbourhood(emb[3]) & g.neighbourhood(emb[5]) & g.neighbourhood(emb[6]);
    candidates -= image;
    bool extends = false;
    candidates.for_each([&](int f) {
      if (extends) return;
      extends = !(g.neighbourhood(f) & image).intersects(VertexSet(g.order(), {emb[0], emb[1], emb[2], emb[4]}));
    });
    if (!extends) {
      r.cube_condition = false;
      break;
    }
  }

  // House: square 0-1-2-3, roof 4 on {0,1}. Completion vertex is adjacent
  // to the roof and to 2, 3.
  r.prism_condition = true;
  for (const auto& emb : find_induced(g, Pattern::House)) {
    VertexSet image(g.order(), std::span<const int>(emb));
    VertexSet candidates = g.neighbourhood(emb[2]) & g.neighbourhood(emb[3]) & g.neighbourhood(emb[4]);
    candidates -= image;
    bool extends = false;
    candidates.for_each([&](int f) {
      if (extends) return;
      extends = !g.adjacent(f, emb[0]) && !g.adjacent(f, emb[1]);
    });
    if (!extends) {
      r.prism_condition = false;
      break;
    }
  }

  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& t : triangles(g)) rows.push_back(cycle_boundary(g, t));
  for (const auto& s : induced_squares(g)) rows.push_back(cycle_boundary(g, s));
  const int rank2 = rank_mod_p(std::move(rows), static_cast<int>(g.size()));
  const int components = static_cast<int>(g.components().size());
  r.h1_rank = static_cast<int>(g.size()) - g.order() + components - rank2;
  r.h1_trivial = r.h1_rank == 0;
  return r;
}

}  // namespace qmedian
