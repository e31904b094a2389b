#include <random>

#include <gtest/gtest.h>

#include "homexpr/homexpr.hpp"
#include "homexpr/json_io.hpp"

using namespace homexpr;

namespace {

// Reference: enumerate all maps and keep the vertex- and edge-surjective homomorphisms.
BigInt surjective_by_brute_force(const Graph& f, const Graph& h) {
  int nf = f.vertex_count(), nh = h.vertex_count();
  std::vector<int> img(nf, 0);
  BigInt count = 0;
  for (;;) {
    bool hom = true;
    for (auto [a, b] : f.edges())
      if (!h.has_edge(img[a], img[b])) hom = false;
    if (hom) {
      std::vector<char> hit(nh, 0);
      for (int v : img) hit[v] = 1;
      bool vs = std::all_of(hit.begin(), hit.end(), [](char c) { return c; });
      std::set<std::pair<int, int>> es;
      for (auto [a, b] : f.edges()) es.insert({std::min(img[a], img[b]), std::max(img[a], img[b])});
      if (vs && static_cast<int>(es.size()) == h.edge_count()) count += 1;
    }
    int i = 0;
    while (i < nf && ++img[i] == nh) img[i++] = 0;
    if (i == nf) break;
  }
  return count;
}

}  // namespace

TEST(Spasm, Cardinalities) {
  EXPECT_EQ(enumerate_spasm(RootedGraph(cycle_graph(6))).size(), 10u);
  auto c3 = enumerate_spasm(RootedGraph(cycle_graph(3)));
  ASSERT_EQ(c3.size(), 1u);
  EXPECT_TRUE(are_isomorphic(c3[0].graph, cycle_graph(3)));
  auto p3 = enumerate_spasm(RootedGraph(path_graph(3)));
  ASSERT_EQ(p3.size(), 2u);
  EXPECT_TRUE(are_isomorphic(p3[1].graph, complete_graph(2)));
}

TEST(Spasm, RespectsLimit) {
  Limits tight;
  tight.spasm_vertices = 5;
  EXPECT_THROW(enumerate_spasm(RootedGraph(cycle_graph(6)), tight), ResourceError);
}

TEST(Spasm, SurjectiveCounts) {
  EXPECT_EQ(surjective_hom_count(RootedGraph(path_graph(3)), RootedGraph(complete_graph(2))), 2);
  EXPECT_EQ(surjective_hom_count(RootedGraph(complete_graph(2)), RootedGraph(cycle_graph(3))), 0);
  for (Graph f : {cycle_graph(5), grid_graph(2, 3), path_graph(5)}) {
    EXPECT_EQ(surjective_hom_count(RootedGraph(f), RootedGraph(f)), automorphism_count(f));
    for (const auto& img : enumerate_spasm(RootedGraph(f)))
      EXPECT_EQ(surjective_hom_count(RootedGraph(f), img), surjective_by_brute_force(f, img.graph));
  }
}

TEST(Spasm, CoefficientExamples) {
  SpasmBasis c3 = spasm_coefficients(RootedGraph(cycle_graph(3)));
  ASSERT_EQ(c3.entries.size(), 1u);
  EXPECT_EQ(c3.entries[0].alpha, Rational(1, 6));
  SpasmBasis p3 = spasm_coefficients(RootedGraph(path_graph(3)));
  ASSERT_EQ(p3.entries.size(), 2u);
  EXPECT_EQ(p3.entries[0].alpha, Rational(1, 2));
  EXPECT_EQ(p3.entries[1].alpha, Rational(-1, 2));
  SpasmBasis c6 = spasm_coefficients(RootedGraph(cycle_graph(6)));
  EXPECT_EQ(c6.entries.size(), 10u);
  for (const auto& e : c6.entries) EXPECT_NE(e.alpha, 0);
}

TEST(Spasm, RootedCoefficientsMatchSubgraphCounts) {
  std::mt19937_64 rng(99);
  for (RootedGraph f : {RootedGraph(cycle_graph(5), {0}), RootedGraph(path_graph(4), {0, 1}), RootedGraph(path_graph(3), {0, 2})}) {
    SpasmBasis b = spasm_coefficients(f);
    for (int i = 0; i < 10; ++i) {
      RootedGraph t = detail::random_target(f, rng, 7);
      EXPECT_EQ(b.evaluate(t), Rational(sub_count(f, t)));
    }
  }
}

TEST(Spasm, BasisJsonRoundTrip) {
  SpasmBasis b = spasm_coefficients(RootedGraph(path_graph(3)));
  Json j = to_json(b);
  EXPECT_EQ(j["pattern"], to_graph6(path_graph(3)));
  EXPECT_EQ(j["entries"][1]["alpha"], "-1/2");
  SpasmBasis back = spasm_basis_from_json(j);
  ASSERT_EQ(back.entries.size(), 2u);
  EXPECT_EQ(back.entries[1].alpha, Rational(-1, 2));
}

TEST(Spasm, Countability) {
  FamilyId sub{FamilyKind::Sub}, f{FamilyKind::F};
  EXPECT_TRUE(subgraph_countable(RootedGraph(cycle_graph(6)), sub, Level::Graph).countable);
  Countability rooted = subgraph_countable(RootedGraph(cycle_graph(6), {0}), sub, Level::Node);
  EXPECT_FALSE(rooted.countable);
  ASSERT_TRUE(rooted.witness.has_value());
  EXPECT_FALSE(in_family_rooted(*rooted.witness, sub, Level::Node));
  Countability c8 = subgraph_countable(RootedGraph(cycle_graph(8)), f, Level::Graph);
  EXPECT_FALSE(c8.countable);
  ASSERT_TRUE(c8.witness.has_value());
  EXPECT_TRUE(are_isomorphic(c8.witness->graph, complete_graph(4)));
  EXPECT_THROW(subgraph_countable(RootedGraph(cycle_graph(6)), sub, Level::Node), DomainError);
}

TEST(Spasm, CountabilityAgreesWithFullEnumeration) {
  FamilyId l{FamilyKind::L};
  for (int m = 3; m <= 6; ++m)
    for (const Graph& g : connected_graphs_with_edges(m)) {
      bool all_in = true;
      for (const auto& img : enumerate_spasm(RootedGraph(g))) all_in = all_in && in_family(img.graph, l);
      EXPECT_EQ(subgraph_countable(RootedGraph(g), l, Level::Graph).countable, all_in) << to_graph6(g);
    }
}
