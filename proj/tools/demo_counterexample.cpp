// Walks through the library on a few classic patterns.
#include <iostream>

#include "homexpr/homexpr.hpp"

using namespace homexpr;

int main() {
  // Triangle: MP cannot tell the Fürer pair apart, but hom(C3, .) can.
  Graph c3 = cycle_graph(3);
  FurerGraph fg = furer_graph(c3);
  Graph twisted = twist(fg, {{0, 1}});
  std::cout << "G(C3) = " << to_graph6(fg.graph) << ", H(C3) = " << to_graph6(twisted) << "\n";
  std::cout << "  MP colours equal: " << std::boolalpha << graph_repr_equal(ModelId::MP, fg.graph, twisted) << "\n";
  std::cout << "  hom(C3, G) = " << hom_count(c3, fg.graph) << ", hom(C3, H) = " << hom_count(c3, twisted) << "\n";

  // K4 has treewidth 3, so even the F model misses it.
  RootedGraph k4(complete_graph(4));
  FamilyId f_family{FamilyKind::F};
  std::cout << "K4 in F: " << in_family(k4.graph, f_family) << "\n";
  CounterexamplePair pair = build_counterexample(k4, f_family, Level::Graph);
  VerifyReport report = verify_counterexample(k4, f_family, Level::Graph, pair);
  std::cout << "  F colours equal: " << report.repr_equal << ", hom " << report.hom_g << " vs " << report.hom_h << "\n";

  // Six-cycle: subgraph count as a combination of homomorphism counts.
  SpasmBasis basis = spasm_coefficients(RootedGraph(cycle_graph(6)));
  std::cout << "sub(C6, .) = ";
  for (std::size_t i = 0; i < basis.entries.size(); ++i)
    std::cout << (i ? " + " : "") << "(" << to_string(basis.entries[i].alpha) << ") hom("
              << to_graph6(basis.entries[i].image.graph) << ", .)";
  std::cout << "\n";
  Graph k33 = graph_from_edges(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
  std::cout << "  on K3,3: " << basis.evaluate(RootedGraph(k33)) << " = " << sub_count(cycle_graph(6), k33) << "\n";

  FamilyId sub_family{FamilyKind::Sub};
  std::cout << "Sub counts C6 at graph level: " << subgraph_countable(RootedGraph(cycle_graph(6)), sub_family, Level::Graph).countable
            << ", rooted at node level: "
            << subgraph_countable(RootedGraph(cycle_graph(6), {0}), sub_family, Level::Node).countable << "\n";
  return 0;
}
