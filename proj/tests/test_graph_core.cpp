#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "homexpr/homexpr.hpp"

using namespace homexpr;

TEST(GraphCore, BuildersHaveExpectedShape) {
  EXPECT_EQ(cycle_graph(5).edge_count(), 5);
  EXPECT_EQ(path_graph(4).edge_count(), 3);
  EXPECT_EQ(complete_graph(5).edge_count(), 10);
  EXPECT_EQ(star_graph(3).vertex_count(), 4);
  EXPECT_EQ(grid_graph(2, 4).edge_count(), 10);
  EXPECT_TRUE(is_forest(path_graph(6)));
  EXPECT_FALSE(is_forest(cycle_graph(3)));
  EXPECT_EQ(connected_components(disjoint_union(cycle_graph(3), path_graph(2))).size(), 2u);
}

TEST(GraphCore, RejectsSelfLoopsAndDuplicates) {
  Graph g(3);
  g.add_edge(0, 1);
  EXPECT_THROW(g.add_edge(1, 1), ValidationError);
  EXPECT_THROW(g.add_edge(1, 0), ValidationError);
  EXPECT_THROW(g.add_edge(0, 5), ValidationError);
  EXPECT_THROW(RootedGraph(Graph(2), {0, 1, 1}), ValidationError);
}

TEST(GraphCore, Graph6RoundTrip) {
  EXPECT_EQ(to_graph6(complete_graph(3)), "Bw");
  EXPECT_EQ(to_graph6(path_graph(2)), "A_");
  EXPECT_EQ(to_graph6(Graph(1)), "@");
  std::mt19937 rng(11);
  for (int it = 0; it < 40; ++it) {
    int n = 1 + static_cast<int>(rng() % 70);
    Graph g(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 5 == 0) g.add_edge(a, b);
    EXPECT_EQ(parse_graph6(to_graph6(g)), g);
  }
}

TEST(GraphCore, Graph6RejectsMalformedInput) {
  EXPECT_THROW(parse_graph6(""), ParseError);
  EXPECT_THROW(parse_graph6("B"), ParseError);
  EXPECT_THROW(parse_graph6("B\x01"), ParseError);
}

TEST(GraphCore, EdgeListRoundTripKeepsRootsAndLabels) {
  Graph g = cycle_graph(4);
  g.set_label(2, 7);
  RootedGraph rg(g, {1, 3});
  RootedGraph back = parse_edge_list(to_edge_list(rg));
  EXPECT_EQ(back, rg);
  EXPECT_THROW(parse_edge_list("n 2\ne 0 0\n"), ValidationError);
  EXPECT_THROW(parse_edge_list("e 0 1\n"), ValidationError);
  EXPECT_THROW(parse_edge_list("n 2\ne 0 1\ne 1 0\n"), ValidationError);
}

TEST(GraphCore, AutomorphismCounts) {
  EXPECT_EQ(automorphism_count(cycle_graph(4)), 8);
  EXPECT_EQ(automorphism_count(complete_graph(4)), 24);
  EXPECT_EQ(automorphism_count(path_graph(3)), 2);
  EXPECT_EQ(automorphism_count(complete_graph(7)), 5040);
  EXPECT_EQ(automorphism_count(grid_graph(3, 3)), 8);
  EXPECT_EQ(automorphism_count(RootedGraph(path_graph(3), {0})), 1);
}

TEST(GraphCore, CanonicalFormIsPermutationInvariant) {
  std::mt19937 rng(3);
  for (int it = 0; it < 60; ++it) {
    int n = 2 + static_cast<int>(rng() % 9);
    Graph g(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 2) g.add_edge(a, b);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    RootedGraph rg(g, {0});
    EXPECT_TRUE(are_isomorphic(rg, permuted(rg, perm)));
    EXPECT_EQ(canonical_form(g), canonical_form(permuted(g, perm)));
  }
  EXPECT_FALSE(are_isomorphic(RootedGraph(path_graph(3), {0}), RootedGraph(path_graph(3), {1})));
  EXPECT_FALSE(are_isomorphic(cycle_graph(6), disjoint_union(cycle_graph(3), cycle_graph(3))));
}

TEST(GraphCore, EnumerationCounts) {
  std::vector<std::size_t> by_n{1, 1, 2, 6, 21, 112};
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(connected_graphs_with_vertices(n).size(), by_n[n - 1]) << n;
  std::vector<std::size_t> by_m{1, 1, 3, 5, 12, 30, 79, 227, 710};
  for (int m = 1; m <= 9; ++m) EXPECT_EQ(connected_graphs_with_edges(m).size(), by_m[m - 1]) << m;
  Limits tight;
  tight.enum_vertices = 4;
  EXPECT_THROW(connected_graphs_with_vertices(5, tight), ResourceError);
}

TEST(GraphCore, RootedEnumeration) {
  std::size_t rooted_trees = 0;
  for (const Graph& g : connected_graphs_with_vertices(5))
    if (is_forest(g)) rooted_trees += enumerate_rooted(g, 1).size();
  EXPECT_EQ(rooted_trees, 9u);
  EXPECT_EQ(enumerate_rooted(path_graph(3), 2).size(), 3u);
}

TEST(GraphCore, Treewidth) {
  EXPECT_EQ(treewidth(complete_graph(4)), 3);
  EXPECT_EQ(treewidth(cycle_graph(5)), 2);
  EXPECT_EQ(treewidth(path_graph(5)), 1);
  EXPECT_EQ(treewidth(grid_graph(3, 4)), 3);
  EXPECT_EQ(treewidth(Graph(3)), 0);
  EXPECT_EQ(treewidth(complete_graph(6)), 5);
}

TEST(GraphCore, CategoricalProduct) {
  Graph p = categorical_product(complete_graph(2), complete_graph(3));
  EXPECT_EQ(p.vertex_count(), 6);
  EXPECT_TRUE(are_isomorphic(p, cycle_graph(6)));
}

TEST(GraphCore, LimitsParsing) {
  Limits l = parse_limits("n=5,m=6,spasm=9");
  EXPECT_EQ(l.enum_vertices, 5);
  EXPECT_EQ(l.enum_edges, 6);
  EXPECT_EQ(l.spasm_vertices, 9);
  EXPECT_THROW(parse_limits("q=1"), ValidationError);
  EXPECT_THROW(parse_limits("n=x"), ValidationError);
}
