#include "qmedian/vertex_set.hpp"

#include <boost/functional/hash.hpp>

namespace qmedian {

VertexSet::VertexSet(std::size_t universe, std::initializer_list<int> members) : bits_(universe) {
  for (int v : members) insert(v);
}

VertexSet::VertexSet(std::size_t universe, std::span<const int> members) : bits_(universe) {
  for (int v : members) insert(v);
}

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet s(universe);
  s.bits_.set();
  return s;
}

int VertexSet::first() const {
  auto i = bits_.find_first();
  return i == boost::dynamic_bitset<>::npos ? -1 : static_cast<int>(i);
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  out.reserve(count());
  for_each([&](int v) { out.push_back(v); });
  return out;
}

VertexSet VertexSet::complement() const {
  VertexSet s = *this;
  s.bits_.flip();
  return s;
}

// Lexicographic on sorted member lists, so containers of sets print in a
// stable, human-readable order.
bool operator<(const VertexSet& a, const VertexSet& b) {
  auto i = a.bits_.find_first();
  auto j = b.bits_.find_first();
  constexpr auto npos = boost::dynamic_bitset<>::npos;
  while (i != npos && j != npos) {
    if (i != j) return i < j;
    i = a.bits_.find_next(i);
    j = b.bits_.find_next(j);
  }
  if (i == npos && j == npos) return a.universe() < b.universe();
  return i == npos;
}

std::size_t VertexSet::hash() const { return boost::hash_value(bits_); }

}  // namespace qmedian
