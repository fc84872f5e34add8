#include <gtest/gtest.h>

#include "qmedian/action.hpp"
#include "qmedian/error.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace qmedian;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::NotFound;
}

}  // namespace

TEST(Closure, Sizes) {
  EXPECT_EQ(group_closure(4, {{1, 2, 3, 0}}).elements.size(), 4u);
  EXPECT_EQ(group_closure(3, {{1, 0, 2}, {1, 2, 0}}).elements.size(), 6u);
  EXPECT_EQ(group_closure(3, {}).elements.size(), 1u);
  const auto capped = group_closure(6, {{1, 2, 3, 4, 5, 0}, {1, 0, 2, 3, 4, 5}}, 10);
  EXPECT_FALSE(capped.complete);
  EXPECT_EQ(kind_of([] { group_closure(3, {{0, 0, 1}}); }), ErrorKind::Validation);
  EXPECT_EQ(kind_of([] { group_closure(3, {{0, 1}}); }), ErrorKind::Validation);
}

TEST(Action, Validation) {
  EXPECT_EQ(kind_of([] { GraphAction(graphs::cycle(4), {{1, 0, 2, 3}}); }), ErrorKind::NotAutomorphism);
  EXPECT_EQ(kind_of([] { GraphAction(graphs::cycle(4), {{1, 2, 3}}); }), ErrorKind::Validation);
  EXPECT_EQ(kind_of([] { analyze_action(GraphAction(graphs::cycle(5), {{1, 2, 3, 4, 0}})); }),
            ErrorKind::NotQuasiMedian);
}

TEST(Action, RotationOfSquare) {
  const GraphAction z4(graphs::cycle(4), {{1, 2, 3, 0}});
  const auto r = analyze_action(z4);
  EXPECT_EQ(r.closure_size, 4u);
  EXPECT_TRUE(r.hyperplane_transitive);
  EXPECT_TRUE(r.convex_minimal);
  // The square itself is a prism and no sector holds a translate of it.
  EXPECT_FALSE(r.strongly_convex_minimal);
  EXPECT_TRUE(r.has_hyperplane_inversion);
  EXPECT_EQ(r.q, (std::vector<int>{2, 2}));
  EXPECT_EQ(r.p, (std::vector<int>{1, 1}));
  EXPECT_TRUE(r.orbits_bounded);
  EXPECT_FALSE(r.disclaimer.empty());
  const auto m = monohyp_prism_check(z4);
  EXPECT_EQ(m.strongly_convex_minimal, m.lifted_convex_minimal);
  EXPECT_TRUE(m.agree);
}

TEST(Action, SymmetricGroupOnTriangle) {
  const GraphAction s3(graphs::complete(3), {{1, 0, 2}, {1, 2, 0}});
  const auto r = analyze_action(s3);
  EXPECT_EQ(r.closure_size, 6u);
  EXPECT_TRUE(r.hyperplane_transitive);
  EXPECT_TRUE(r.convex_minimal);
  EXPECT_FALSE(r.strongly_convex_minimal);
  EXPECT_EQ(r.q, std::vector<int>{3});
  EXPECT_EQ(r.p, std::vector<int>{1});
  const auto m = monohyp_prism_check(s3);
  EXPECT_FALSE(m.lifted_convex_minimal);
  EXPECT_TRUE(m.agree);
}

TEST(Action, TrivialIsNotConvexMinimal) {
  const GraphAction t(graphs::cycle(4), {});
  const auto r = analyze_action(t);
  EXPECT_FALSE(r.convex_minimal);
  EXPECT_FALSE(r.hyperplane_transitive);
  EXPECT_FALSE(r.has_hyperplane_inversion);
  EXPECT_EQ(r.p, r.q);
  EXPECT_EQ(kind_of([&] { monohyp_prism_check(t); }), ErrorKind::PrerequisiteFailed);
  EXPECT_EQ(fixed_vertex(t), 0);
}

TEST(Core, Examples) {
  const auto trivial = convex_minimal_core(GraphAction(graphs::cycle(4), {}));
  EXPECT_EQ(trivial.core.count(), 1u);
  EXPECT_EQ(trivial.sector_orbits, 0);
  EXPECT_TRUE(trivial.restricted_convex_minimal);

  const auto ladder = convex_minimal_core(GraphAction(graphs::grid(2, 3), {{2, 1, 0, 5, 4, 3}}));
  EXPECT_TRUE(ladder.restricted_convex_minimal);
  for (int v : ladder.core.members()) EXPECT_TRUE(v == 1 || v == 4);

  const auto z4 = convex_minimal_core(GraphAction(graphs::cycle(4), {{1, 2, 3, 0}}));
  EXPECT_TRUE(z4.core.is_full());
  EXPECT_TRUE(z4.restricted_convex_minimal);
}

TEST(Action, CorpusInvariants) {
  for (const auto& c : qmedian::testing::quasi_median_corpus()) {
    const GraphAction full(c.graph, oracle::automorphisms(c.graph));
    const HyperplaneDecomposition d(c.graph);
    const auto r = analyze_action(full, d);
    ASSERT_EQ(r.p.size(), r.q.size());
    for (std::size_t h = 0; h < r.p.size(); ++h) {
      EXPECT_GE(r.p[h], 1) << c.name;
      EXPECT_LE(r.p[h], r.q[h]) << c.name;
    }
    std::size_t orbit_total = 0;
    for (const auto& o : r.hyperplane_orbits) orbit_total += o.size();
    EXPECT_EQ(orbit_total, static_cast<std::size_t>(d.count())) << c.name;
    if (r.hyperplane_transitive && r.convex_minimal) {
      const auto m = monohyp_prism_check(full);
      EXPECT_TRUE(m.agree) << c.name;
      EXPECT_TRUE(m.lifted_inversion_free) << c.name;
    }
    const auto pg = build_prism_graph(d);
    const auto lifted = lift_action(full, pg);
    EXPECT_EQ(lifted.closure().elements.size(), full.closure().elements.size()) << c.name;
    // Finite groups fix a prism of a finite quasi-median graph.
    EXPECT_TRUE(stabilised_prism(full, pg).has_value()) << c.name;
  }
}

TEST(Action, FixedVertexWithoutInversion) {
  const GraphAction flip(graphs::path(3), {{2, 1, 0}});
  EXPECT_EQ(fixed_vertex(flip), 1);
  EXPECT_FALSE(analyze_action(flip).has_hyperplane_inversion);
  const GraphAction swap(graphs::path(2), {{1, 0}});
  EXPECT_FALSE(fixed_vertex(swap).has_value());
  EXPECT_TRUE(analyze_action(swap).has_hyperplane_inversion);
}
