#include <gtest/gtest.h>

#include "homexpr/homexpr.hpp"

using namespace homexpr;

namespace {

const FamilyId kMP{FamilyKind::MP}, kSub{FamilyKind::Sub}, kL{FamilyKind::L}, kLF{FamilyKind::LF}, kF{FamilyKind::F};

// Two vertices joined by three internally disjoint paths of length 2.
Graph theta() { return graph_from_edges(5, {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 1}}); }

}  // namespace

TEST(Ned, CycleAsPathPlusClosingEar) {
  EarDecomposition d;
  d.ears = {{0, 1, 2, 3, 4}, {4, 0}};
  d.parent = {-1, 0};
  d.interval = {{-1, -1}, {0, 4}};
  for (auto v : {NedVariant::General, NedVariant::Strong, NedVariant::AlmostStrong, NedVariant::EndpointShared})
    EXPECT_TRUE(validate_ned(cycle_graph(5), d, v)) << ned_violation(cycle_graph(5), d, v);
}

TEST(Ned, ThetaGraphStrongDecomposition) {
  EarDecomposition d;
  d.ears = {{2, 0, 3, 1}, {0, 4, 1}, {2, 1}};
  d.parent = {-1, 0, 0};
  d.interval = {{-1, -1}, {1, 3}, {0, 3}};
  EXPECT_TRUE(validate_ned(theta(), d, NedVariant::Strong)) << ned_violation(theta(), d, NedVariant::Strong);
}

TEST(Ned, RejectsEarReusingInteriorVertex) {
  Graph g = graph_from_edges(5, {{0, 1}, {1, 2}, {0, 3}, {3, 1}, {1, 4}, {4, 2}});
  EarDecomposition good;
  good.ears = {{0, 1, 2}, {0, 3, 1}, {1, 4, 2}};
  good.parent = {-1, 0, 0};
  good.interval = {{-1, -1}, {0, 1}, {1, 2}};
  EXPECT_TRUE(validate_ned(g, good, NedVariant::General)) << ned_violation(g, good, NedVariant::General);
  EarDecomposition bad;
  bad.ears = {{0, 1, 2}, {0, 3, 1, 4, 2}};
  bad.parent = {-1, 0};
  bad.interval = {{-1, -1}, {0, 2}};
  EXPECT_FALSE(validate_ned(g, bad, NedVariant::General));
}

TEST(Ned, FindExamples) {
  EXPECT_TRUE(find_ned(cycle_graph(6), NedVariant::Strong).has_value());
  EXPECT_FALSE(find_ned(complete_graph(4), NedVariant::General).has_value());
  auto grid = find_ned(grid_graph(2, 4), NedVariant::Strong);
  ASSERT_TRUE(grid.has_value());
  EXPECT_TRUE(validate_ned(grid_graph(2, 4), *grid, NedVariant::Strong));
  EXPECT_FALSE(find_ned(grid_graph(2, 4), NedVariant::EndpointShared).has_value());
}

TEST(Ned, SerializationRoundTrip) {
  auto d = find_ned(theta(), NedVariant::AlmostStrong);
  ASSERT_TRUE(d.has_value());
  EarDecomposition back = parse_ned(serialize_ned(*d));
  EXPECT_EQ(back.ears, d->ears);
  EXPECT_EQ(back.parent, d->parent);
  EXPECT_EQ(back.interval, d->interval);
  EXPECT_THROW(parse_ned("ear 0 parent x"), ValidationError);
}

TEST(Ned, FirstEarConstraints) {
  Graph c6 = cycle_graph(6);
  auto d = find_ned(c6, NedVariant::Strong, std::vector<int>{2, 3});
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->ears[0].front(), 2);
  EXPECT_EQ(d->ears[0].back(), 3);
  auto s = find_ned(c6, NedVariant::EndpointShared, NedConstraints{{}, 4});
  ASSERT_TRUE(s.has_value());
  EXPECT_TRUE(validate_ned(c6, *s, NedVariant::EndpointShared));
}

TEST(TreeDecomposition, EdgeComponents) {
  EXPECT_EQ(edge_components(cycle_graph(6), {0, 3}).size(), 2u);
  EXPECT_EQ(edge_components(cycle_graph(6), {}).size(), 1u);
  EXPECT_EQ(edge_components(cycle_graph(6), {0, 1, 2, 3, 4, 5}).size(), 6u);
}

TEST(TreeDecomposition, FindAndValidate) {
  auto tri = find_canonical_td(complete_graph(3), TdFamily::Sub);
  ASSERT_TRUE(tri.has_value());
  EXPECT_TRUE(validate_canonical_td(complete_graph(3), *tri, TdFamily::Sub));
  EXPECT_FALSE(find_canonical_td(complete_graph(4), TdFamily::F).has_value());
  auto t = find_canonical_td(theta(), TdFamily::L);
  ASSERT_TRUE(t.has_value());
  EXPECT_TRUE(validate_canonical_td(theta(), *t, TdFamily::L)) << canonical_td_violation(theta(), *t, TdFamily::L);
  EXPECT_EQ(serialize_td(parse_td(serialize_td(*t))), serialize_td(*t));
}

TEST(TreeDecomposition, RejectsMissingEdge) {
  Graph tri = complete_graph(3);
  auto t = find_canonical_td(tri, TdFamily::F);
  ASSERT_TRUE(t.has_value());
  Graph more = complete_graph(4);
  EXPECT_FALSE(validate_canonical_td(more, *t, TdFamily::F));
}

TEST(TreeDecomposition, LocalFolkloreBranchingRule) {
  // The 5-cycle 0-3-2-4-1; the odd bag {0,1,2} branches on vertex 2, which is
  // adjacent to neither 0 nor 1.
  Graph g = graph_from_edges(5, {{0, 1}, {0, 3}, {2, 3}, {1, 4}, {2, 4}});
  TreeDecomposition t;
  int r = t.add(-1, {0, 1});
  int odd = t.add(r, {0, 1, 2});
  int a = t.add(odd, {0, 2});
  int a2 = t.add(a, {0, 2, 3});
  t.add(a2, {0, 3});
  int b = t.add(odd, {1, 2});
  int b2 = t.add(b, {1, 2, 4});
  t.add(b2, {1, 4});
  EXPECT_TRUE(validate_canonical_td(g, t, TdFamily::F)) << canonical_td_violation(g, t, TdFamily::F);
  EXPECT_FALSE(validate_canonical_td(g, t, TdFamily::LF));
  EXPECT_FALSE(validate_canonical_td(g, t, TdFamily::L));
}

TEST(Family, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_family("Sub(2)")), "Sub(2)");
  EXPECT_EQ(parse_family("LF").kind, FamilyKind::LF);
  EXPECT_THROW(parse_family("F(0)"), ValidationError);
  EXPECT_THROW(parse_family("Nope"), ValidationError);
  EXPECT_THROW(parse_level("vertex"), ValidationError);
}

TEST(Family, GraphLevelExamples) {
  EXPECT_TRUE(in_family(cycle_graph(6), kSub));
  for (const FamilyId& f : base_families()) EXPECT_FALSE(in_family(complete_graph(4), f)) << to_string(f);
  EXPECT_TRUE(in_family(complete_graph(4), {FamilyKind::SubK, 2}));
  Graph two = disjoint_union(cycle_graph(3), cycle_graph(3));
  EXPECT_FALSE(in_family(two, kSub));
  EXPECT_TRUE(in_family(two, kL));
  EXPECT_TRUE(in_family(path_graph(5), kMP));
  EXPECT_FALSE(in_family(cycle_graph(3), kMP));
}

TEST(Family, RootedExamples) {
  EXPECT_TRUE(in_family_rooted(RootedGraph(cycle_graph(6), {0}), kSub, Level::Node));
  Graph paw = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  EXPECT_FALSE(in_family_rooted(RootedGraph(paw, {3}), kSub, Level::Node));
  EXPECT_TRUE(in_family_rooted(RootedGraph(paw, {2}), kSub, Level::Node));
  EXPECT_TRUE(in_family_rooted(RootedGraph(cycle_graph(6), {0, 1}), kF, Level::Edge));
  EXPECT_THROW(in_family_rooted(RootedGraph(cycle_graph(6), {0}), kF, Level::Edge), DomainError);
  EXPECT_THROW(in_family_rooted(RootedGraph(disjoint_union(cycle_graph(3), cycle_graph(3)), {0}), kF, Level::Node), DomainError);
}

TEST(Family, DeletionWitness) {
  auto w = deletion_witness(complete_graph(4), 2);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->size(), 2u);
  EXPECT_FALSE(deletion_witness(complete_graph(5), 2).has_value());
  EXPECT_THROW(deletion_witness(complete_graph(5), 9), ResourceError);
}

TEST(Family, DecidersAgreeOnSmallGraphs) {
  for (int m = 1; m <= 6; ++m)
    for (const Graph& g : connected_graphs_with_edges(m)) {
      bool tw2 = treewidth(g) <= 2;
      EXPECT_EQ(in_family(g, kF), tw2);
      EXPECT_EQ(find_ned(g, NedVariant::General).has_value(), tw2);
      EXPECT_EQ(find_ned(g, NedVariant::EndpointShared).has_value(), deletion_witness(g, 1).has_value());
      EXPECT_EQ(in_family_by_td(g, TdFamily::Sub), in_family(g, kSub));
      bool l = in_family(g, kL), lf = in_family(g, kLF), sub = in_family(g, kSub);
      EXPECT_TRUE(!sub || l);
      EXPECT_TRUE(!l || lf);
      EXPECT_TRUE(!lf || tw2);
    }
}
