#include <gtest/gtest.h>

#include "homexpr/homexpr.hpp"

using namespace homexpr;

namespace {

const FamilyId kMP{FamilyKind::MP}, kSub{FamilyKind::Sub}, kF{FamilyKind::F};

}  // namespace

TEST(Furer, SmallBaseGraphs) {
  FurerGraph k2 = furer_graph(complete_graph(2));
  EXPECT_EQ(k2.graph.vertex_count(), 2);
  EXPECT_EQ(k2.graph.edge_count(), 1);
  FurerGraph c3 = furer_graph(cycle_graph(3));
  EXPECT_EQ(c3.graph.vertex_count(), 6);
  EXPECT_TRUE(are_isomorphic(c3.graph, disjoint_union(complete_graph(3), complete_graph(3))));
  EXPECT_TRUE(are_isomorphic(twist(c3, {{0, 1}}), cycle_graph(6)));
  EXPECT_EQ(furer_graph(complete_graph(4)).graph.vertex_count(), 16);
  EXPECT_THROW(furer_graph(Graph(2)), DomainError);
}

TEST(Furer, VertexLookup) {
  FurerGraph fg = furer_graph(cycle_graph(4));
  for (int x = 0; x < 4; ++x) {
    int p = fg.vertex(x, {});
    EXPECT_EQ(fg.base_of[p], x);
    EXPECT_TRUE(fg.subset_of[p].empty());
  }
  EXPECT_THROW(fg.vertex(0, {2}), DomainError);
}

TEST(Furer, TwistByEmptySetIsIdentity) {
  FurerGraph fg = furer_graph(cycle_graph(5));
  EXPECT_EQ(twist(fg, {}), fg.graph);
  EXPECT_THROW(twist(fg, {{0, 2}}), DomainError);
}

TEST(Furer, TwistIsAnInvolution) {
  FurerGraph fg = furer_graph(complete_graph(4));
  FurerGraph once = fg;
  once.graph = twist(fg, {{0, 1}});
  EXPECT_NE(once.graph, fg.graph);
  EXPECT_EQ(twist(once, {{0, 1}}), fg.graph);
}

TEST(Furer, TwistParityDeterminesIsomorphismClass) {
  FurerGraph fg = furer_graph(grid_graph(2, 3));
  std::vector<Edge> e = fg.base.edges();
  Graph odd = twist(fg, {e[0]});
  EXPECT_FALSE(are_isomorphic(fg.graph, odd));
  EXPECT_TRUE(are_isomorphic(twist(fg, {e[0], e[3]}), fg.graph));
  EXPECT_TRUE(are_isomorphic(twist(fg, {e[1], e[2], e[5]}), odd));
}

TEST(Furer, CliqueAugmentedBase) {
  RootedGraph base = clique_augmented_base(RootedGraph(cycle_graph(5), {0}), 4);
  EXPECT_EQ(base.graph.vertex_count(), 8);
  EXPECT_EQ(base.graph.edge_count(), 11);
  RootedGraph pair = clique_augmented_base(RootedGraph(cycle_graph(5), {0, 1}), 4);
  EXPECT_EQ(pair.graph.vertex_count(), 7);
  EXPECT_EQ(pair.roots, (std::vector<int>{0, 1}));
}

TEST(Furer, CliquePairCandidatesStayInsidePattern) {
  CliquePair cp = clique_augmented_pair(RootedGraph(cycle_graph(6), {0}));
  ASSERT_EQ(cp.xi.size(), 1u);
  EXPECT_TRUE(cp.furer.subset_of[cp.xi[0]].empty());
  for (int p : cp.eta_candidates[0]) {
    EXPECT_EQ(cp.furer.base_of[p], 0);
    for (int v : cp.furer.subset_of[p]) EXPECT_LT(v, 6);
  }
}

TEST(Furer, GraphLevelCounterexamples) {
  CounterexamplePair c3 = build_counterexample(RootedGraph(cycle_graph(3)), kMP, Level::Graph);
  VerifyReport r = verify_counterexample(RootedGraph(cycle_graph(3)), kMP, Level::Graph, c3, true);
  EXPECT_TRUE(r.repr_equal);
  EXPECT_EQ(r.hom_g, 12);
  EXPECT_EQ(r.hom_h, 0);
  EXPECT_EQ(*r.sub_g, 2);
  EXPECT_EQ(*r.sub_h, 0);
  EXPECT_TRUE(r.verdict);

  CounterexamplePair k4 = build_counterexample(RootedGraph(complete_graph(4)), kF, Level::Graph);
  VerifyReport rk = verify_counterexample(RootedGraph(complete_graph(4)), kF, Level::Graph, k4);
  EXPECT_TRUE(rk.verdict);
  EXPECT_GT(rk.hom_g, rk.hom_h);

  Graph two = disjoint_union(cycle_graph(3), path_graph(2));
  CounterexamplePair mixed = build_counterexample(RootedGraph(two), kMP, Level::Graph);
  EXPECT_EQ(mixed.g.vertex_count(), 8);
  EXPECT_TRUE(verify_counterexample(RootedGraph(two), kMP, Level::Graph, mixed).verdict);
}

TEST(Furer, RefusesMembersAndBadLevels) {
  EXPECT_THROW(build_counterexample(RootedGraph(cycle_graph(6)), kSub, Level::Graph), DomainError);
  EXPECT_THROW(build_counterexample(RootedGraph(cycle_graph(6), {0}), kSub, Level::Graph), DomainError);
  EXPECT_THROW(build_counterexample(RootedGraph(cycle_graph(3), {0, 1}), kMP, Level::Edge), DomainError);
}

TEST(Furer, NodeLevelWitnessForRootedHexagon) {
  Countability c = subgraph_countable(RootedGraph(cycle_graph(6), {0}), kSub, Level::Node);
  ASSERT_TRUE(c.witness.has_value());
  CounterexamplePair p = build_counterexample(*c.witness, kSub, Level::Node);
  VerifyReport r = verify_counterexample(*c.witness, kSub, Level::Node, p);
  EXPECT_TRUE(r.repr_equal);
  EXPECT_NE(r.hom_g, r.hom_h);
}

TEST(Furer, VerifyDetectsWrongMarks) {
  // Triangle with a pendant vertex, rooted at the pendant end.
  RootedGraph paw(graph_from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}), {3});
  CounterexamplePair p = build_counterexample(paw, kSub, Level::Node);
  EXPECT_TRUE(verify_counterexample(paw, kSub, Level::Node, p).verdict);
  p.marks_h = p.marks_g;
  p.h = p.g;
  EXPECT_FALSE(verify_counterexample(paw, kSub, Level::Node, p).verdict);
  p.marks_h.clear();
  EXPECT_THROW(verify_counterexample(paw, kSub, Level::Node, p), DomainError);
}

TEST(Furer, RootedSweepUpToSixEdges) {
  for (Level level : {Level::Node, Level::Edge})
    for (const FamilyId& fam : base_families()) {
      if (fam.kind == FamilyKind::MP && level == Level::Edge) continue;
      for (int m = 1; m <= 6; ++m)
        for (const Graph& g : connected_graphs_with_edges(m))
          for (const RootedGraph& f : enumerate_rooted(g, roots_for(level))) {
            if (in_family_rooted(f, fam, level)) continue;
            CounterexamplePair p = build_counterexample(f, fam, level);
            EXPECT_TRUE(verify_counterexample(f, fam, level, p).verdict)
                << to_string(fam) << " " << to_graph6(f.graph) << " roots " << f.roots[0];
          }
    }
}
