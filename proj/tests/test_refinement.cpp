#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "homexpr/homexpr.hpp"

using namespace homexpr;

namespace {

const ModelId kModels[] = {ModelId::MP, ModelId::Sub, ModelId::L, ModelId::LF, ModelId::F};

Graph rook_4x4() {
  Graph g(16);
  for (int a = 0; a < 16; ++a)
    for (int b = a + 1; b < 16; ++b)
      if (a / 4 == b / 4 || a % 4 == b % 4) g.add_edge(a, b);
  return g;
}

Graph shrikhande() {
  Graph g(16);
  auto id = [](int i, int j) { return ((i + 4) % 4) * 4 + (j + 4) % 4; };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (auto [di, dj] : {std::pair{0, 1}, {1, 0}, {1, 1}}) {
        int u = id(i, j), v = id(i + di, j + dj);
        if (!g.has_edge(u, v)) g.add_edge(u, v);
      }
  return g;
}

}  // namespace

TEST(Refinement, HexagonVersusTwoTriangles) {
  Graph c6 = cycle_graph(6);
  Graph two = disjoint_union(cycle_graph(3), cycle_graph(3));
  EXPECT_TRUE(graph_repr_equal(ModelId::MP, c6, two));
  for (ModelId m : {ModelId::Sub, ModelId::L, ModelId::LF, ModelId::F}) EXPECT_FALSE(graph_repr_equal(m, c6, two)) << to_string(m);
}

TEST(Refinement, StronglyRegularPairDefeatsFolkloreModel) {
  Graph a = rook_4x4(), b = shrikhande();
  EXPECT_EQ(a.edge_count(), 48);
  EXPECT_EQ(b.edge_count(), 48);
  EXPECT_FALSE(are_isomorphic(a, b));
  EXPECT_TRUE(graph_repr_equal(ModelId::F, a, b));
}

TEST(Refinement, DifferentOrdersAreNotEqual) {
  for (ModelId m : kModels) EXPECT_FALSE(graph_repr_equal(m, cycle_graph(4), cycle_graph(5)));
}

TEST(Refinement, InvariantUnderRelabeling) {
  std::mt19937 rng(21);
  for (int it = 0; it < 20; ++it) {
    int n = 3 + static_cast<int>(rng() % 6);
    Graph g(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 2) g.add_edge(a, b);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h = permuted(g, perm);
    for (ModelId m : kModels) {
      EXPECT_TRUE(graph_repr_equal(m, g, h));
      if (is_connected(g)) {
        EXPECT_TRUE(node_equal(m, g, 0, h, perm[0]));
      }
    }
  }
}

TEST(Refinement, ModelsFormAHierarchy) {
  std::mt19937 rng(8);
  int distinguished = 0;
  for (int it = 0; it < 80; ++it) {
    int n = 4 + static_cast<int>(rng() % 4);
    Graph g(n), h(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (rng() % 2) g.add_edge(a, b);
        if (rng() % 2) h.add_edge(a, b);
      }
    if (g.edge_count() != h.edge_count()) continue;
    bool prev = true;
    for (ModelId m : kModels) {
      bool eq = graph_repr_equal(m, g, h);
      EXPECT_TRUE(prev || !eq) << "stronger model equal after weaker one separated";
      prev = eq;
      distinguished += eq ? 0 : 1;
    }
  }
  EXPECT_GT(distinguished, 0);
}

TEST(Refinement, NodeColoursOnAPath) {
  Graph p = path_graph(3);
  for (ModelId m : kModels) {
    std::vector<int> c = node_repr(m, p);
    EXPECT_EQ(c[0], c[2]);
    EXPECT_NE(c[0], c[1]);
  }
}

TEST(Refinement, PairLevelRules) {
  EXPECT_THROW(pair_repr(ModelId::MP, cycle_graph(4)), DomainError);
  EXPECT_THROW(pair_equal(ModelId::MP, cycle_graph(4), {0, 1}, cycle_graph(4), {0, 1}), DomainError);
  Graph two = disjoint_union(cycle_graph(3), cycle_graph(3));
  EXPECT_THROW(node_equal(ModelId::F, two, 0, two, 1), DomainError);
  Graph c5 = cycle_graph(5);
  EXPECT_TRUE(pair_equal(ModelId::F, c5, {0, 1}, c5, {2, 3}));
  EXPECT_FALSE(pair_equal(ModelId::F, c5, {0, 1}, c5, {0, 2}));
}

TEST(Refinement, LabelsSeparateColours) {
  Graph a = path_graph(3), b = path_graph(3);
  b.set_label(0, 1);
  for (ModelId m : kModels) EXPECT_FALSE(graph_repr_equal(m, a, b));
}

TEST(Refinement, SessionsAreDistinct) {
  Graph g = cycle_graph(4);
  ColorAssignment a = refine(ModelId::L, std::vector<Graph>{g});
  ColorAssignment b = refine(ModelId::L, std::vector<Graph>{g});
  EXPECT_NE(a.session_id, b.session_id);
}
