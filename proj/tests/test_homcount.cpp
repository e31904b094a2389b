#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "homexpr/homexpr.hpp"

using namespace homexpr;

namespace {

Graph random_graph(std::mt19937& rng, int n, int percent) {
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (static_cast<int>(rng() % 100) < percent) g.add_edge(a, b);
  return g;
}

}  // namespace

TEST(HomCount, Examples) {
  EXPECT_EQ(hom_count(complete_graph(2), cycle_graph(5)), 10);
  EXPECT_EQ(hom_count(cycle_graph(4), complete_graph(3)), 18);
  FurerGraph fg = furer_graph(cycle_graph(3));
  EXPECT_EQ(hom_count(cycle_graph(3), fg.graph), 12);
  EXPECT_EQ(hom_count(cycle_graph(3), twist(fg, {{0, 1}})), 0);
  EXPECT_EQ(hom_count(Graph(0), cycle_graph(3)), 1);
  EXPECT_EQ(hom_count(Graph(2), cycle_graph(3)), 9);
}

TEST(HomCount, InjectiveAndSubgraphExamples) {
  EXPECT_EQ(inj_hom_count(path_graph(3), complete_graph(3)), 6);
  EXPECT_EQ(inj_hom_count(complete_graph(4), complete_graph(3)), 0);
  EXPECT_EQ(inj_hom_count(complete_graph(2), complete_graph(2)), 2);
  EXPECT_EQ(sub_count(cycle_graph(3), complete_graph(4)), 4);
  EXPECT_EQ(sub_count(path_graph(3), complete_graph(3)), 3);
  EXPECT_EQ(sub_count(cycle_graph(6), cycle_graph(6)), 1);
}

TEST(HomCount, RootsArePinned) {
  RootedGraph p3_end(path_graph(3), {0});
  RootedGraph c5(cycle_graph(5), {0});
  EXPECT_EQ(hom_count(p3_end, c5), 4);
  RootedGraph edge(complete_graph(2), {0, 1});
  EXPECT_EQ(hom_count(edge, RootedGraph(cycle_graph(5), {0, 1})), 1);
  EXPECT_EQ(hom_count(edge, RootedGraph(cycle_graph(5), {0, 2})), 0);
  EXPECT_THROW(hom_count(edge, c5), DomainError);
}

TEST(HomCount, LabelsMustMatch) {
  Graph f = complete_graph(2);
  f.set_label(0, 1);
  Graph g = path_graph(3);
  g.set_label(1, 1);
  EXPECT_EQ(hom_count(f, g), 2);
}

TEST(HomCount, EliminationMatchesBacktracking) {
  std::mt19937 rng(17);
  for (int it = 0; it < 150; ++it) {
    Graph f = random_graph(rng, 1 + static_cast<int>(rng() % 6), 50);
    Graph g = random_graph(rng, 1 + static_cast<int>(rng() % 8), 50);
    std::vector<int> rf, rg;
    int k = static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) {
      rf.push_back(static_cast<int>(rng() % f.vertex_count()));
      rg.push_back(static_cast<int>(rng() % g.vertex_count()));
    }
    RootedGraph a(f, rf), b(g, rg);
    EXPECT_EQ(hom_count(a, b), hom_count_backtrack(a, b));
  }
}

TEST(HomCount, SubgraphCountMatchesDirectEnumeration) {
  std::mt19937 rng(23);
  for (int it = 0; it < 120; ++it) {
    Graph f = random_graph(rng, 1 + static_cast<int>(rng() % 5), 55);
    Graph g = random_graph(rng, 1 + static_cast<int>(rng() % 7), 55);
    std::vector<int> rf, rg;
    if (rng() % 2) {
      rf.push_back(static_cast<int>(rng() % f.vertex_count()));
      rg.push_back(static_cast<int>(rng() % g.vertex_count()));
    }
    EXPECT_EQ(sub_count(RootedGraph(f, rf), RootedGraph(g, rg)), sub_count_direct(RootedGraph(f, rf), RootedGraph(g, rg)));
  }
}

TEST(HomCount, ProductDisjointUnionAndRelabeling) {
  std::mt19937 rng(5);
  for (int it = 0; it < 30; ++it) {
    Graph f = random_graph(rng, 2 + static_cast<int>(rng() % 4), 60);
    Graph g = random_graph(rng, 2 + static_cast<int>(rng() % 5), 60);
    Graph h = random_graph(rng, 2 + static_cast<int>(rng() % 5), 60);
    EXPECT_EQ(hom_count(f, categorical_product(g, h)), hom_count(f, g) * hom_count(f, h));
    if (is_connected(f)) {
      EXPECT_EQ(hom_count(f, disjoint_union(g, h)), hom_count(f, g) + hom_count(f, h));
    }
    std::vector<int> perm(g.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(hom_count(f, g), hom_count(f, permuted(g, perm)));
    EXPECT_LE(inj_hom_count(f, g), hom_count(f, g));
  }
}

TEST(HomCount, LargeCountsStayExact) {
  // hom(P_k, K_n) = n (n-1)^(k-1).
  BigInt expected = 30;
  for (int i = 0; i < 29; ++i) expected *= 29;
  EXPECT_EQ(hom_count(path_graph(30), complete_graph(30)), expected);
}

TEST(HomCount, HomVector) {
  std::vector<RootedGraph> fs{RootedGraph(complete_graph(2)), RootedGraph(cycle_graph(3))};
  std::vector<BigInt> v = hom_vector(fs, RootedGraph(complete_graph(4)));
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0], 12);
  EXPECT_EQ(v[1], 24);
}
