#ifndef HOMEXPR_FURER_HPP
#define HOMEXPR_FURER_HPP

#include <algorithm>
#include <bit>
#include <optional>
#include <vector>

#include "homexpr/bigint.hpp"
#include "homexpr/errors.hpp"
#include "homexpr/family.hpp"
#include "homexpr/graph.hpp"
#include "homexpr/homcount.hpp"
#include "homexpr/refinement.hpp"

namespace homexpr {

struct FurerGraph {
  Graph graph;
  Graph base;
  // meta[x]: product vertices (x, X), ordered by the neighbour bitmask of X.
  std::vector<std::vector<int>> meta;
  // Per product vertex: its base vertex and X as a sorted list of base vertices.
  std::vector<int> base_of;
  std::vector<std::vector<int>> subset_of;

  int vertex(int x, const std::vector<int>& subset) const {
    for (int p : meta.at(x))
      if (subset_of[p] == subset) return p;
    throw DomainError("no Fürer vertex for that subset");
  }
};

inline FurerGraph furer_graph(const Graph& f) {
  if (!is_connected(f)) throw DomainError("Fürer graph needs a connected base graph");
  int n = f.vertex_count();
  for (int x = 0; x < n; ++x)
    if (f.degree(x) > 20) throw ResourceError("Fürer graph base degree above 20");
  FurerGraph fg;
  fg.base = f;
  fg.meta.resize(n);
  for (int x = 0; x < n; ++x) {
    const auto& nb = f.neighbors(x);
    int d = static_cast<int>(nb.size());
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
      if (std::popcount(mask) % 2 != 0) continue;
      std::vector<int> subset;
      for (int i = 0; i < d; ++i)
        if (mask >> i & 1u) subset.push_back(nb[i]);
      fg.meta[x].push_back(static_cast<int>(fg.base_of.size()));
      fg.base_of.push_back(x);
      fg.subset_of.push_back(std::move(subset));
    }
  }
  Graph g(static_cast<int>(fg.base_of.size()));
  for (int p = 0; p < g.vertex_count(); ++p) g.set_label(p, f.label(fg.base_of[p]));
  auto contains = [](const std::vector<int>& s, int v) { return std::binary_search(s.begin(), s.end(), v); };
  for (auto [x, y] : f.edges())
    for (int p : fg.meta[x])
      for (int q : fg.meta[y])
        if (contains(fg.subset_of[q], x) == contains(fg.subset_of[p], y)) g.add_edge(p, q);
  fg.graph = std::move(g);
  return fg;
}

// Complements the bipartite block between meta(x) and meta(y) for every {x, y} in s.
inline Graph twist(const FurerGraph& fg, const std::vector<Edge>& s) {
  for (auto [x, y] : s)
    if (x < 0 || y < 0 || x >= fg.base.vertex_count() || y >= fg.base.vertex_count() || !fg.base.has_edge(x, y))
      throw DomainError("twist edge {" + std::to_string(x) + "," + std::to_string(y) + "} is not a base edge");
  std::vector<std::vector<int>> flips(fg.base.vertex_count());
  for (auto [x, y] : s) {
    flips[x].push_back(y);
    flips[y].push_back(x);
  }
  int n = fg.graph.vertex_count();
  Graph out(n);
  for (int p = 0; p < n; ++p) out.set_label(p, fg.graph.label(p));
  for (auto [x, y] : fg.base.edges()) {
    long parity = std::count(flips[x].begin(), flips[x].end(), y) % 2;
    for (int p : fg.meta[x])
      for (int q : fg.meta[y])
        if (fg.graph.has_edge(p, q) != (parity == 1)) out.add_edge(p, q);
  }
  return out;
}

struct CliquePair {
  FurerGraph furer;       // Fürer graph of F plus the clique through the roots
  Graph g, h;             // h twists one base edge
  std::vector<int> xi;    // (w_i, {}) in g
  std::vector<std::vector<int>> eta_candidates;  // (w_i, U) in h, U inside N(w_i) and V_F, |U| even
};

// Union of f with a k-clique through its roots; the clique adds k - |roots| new vertices.
inline RootedGraph clique_augmented_base(const RootedGraph& f, int k) {
  f.validate();
  int m = static_cast<int>(f.roots.size());
  if (m < 1 || m > 2) throw DomainError("clique augmentation needs one or two roots");
  std::vector<int> clique = f.roots;
  clique.erase(std::unique(clique.begin(), clique.end()), clique.end());
  if (k < 2 || k < static_cast<int>(clique.size())) throw DomainError("clique size must be at least 2 and cover the roots");
  int n = f.graph.vertex_count();
  int extra = k - static_cast<int>(clique.size());
  Graph g(n + extra);
  for (int v = 0; v < n; ++v) g.set_label(v, f.graph.label(v));
  for (auto [a, b] : f.graph.edges()) g.add_edge(a, b);
  for (int i = 0; i < extra; ++i) clique.push_back(n + i);
  for (std::size_t i = 0; i < clique.size(); ++i)
    for (std::size_t j = i + 1; j < clique.size(); ++j)
      if (!g.has_edge(clique[i], clique[j])) g.add_edge(clique[i], clique[j]);
  return RootedGraph(std::move(g), f.roots);
}

inline CliquePair clique_augmented_pair(const RootedGraph& f, int k = 4) {
  RootedGraph base = clique_augmented_base(f, k);
  CliquePair out;
  out.furer = furer_graph(base.graph);
  out.g = out.furer.graph;
  std::vector<Edge> edges = base.graph.edges();
  out.h = twist(out.furer, {edges.front()});
  int nf = f.graph.vertex_count();
  for (int w : base.roots) {
    out.xi.push_back(out.furer.vertex(w, {}));
    std::vector<int> cands;
    for (int p : out.furer.meta[w]) {
      const auto& u = out.furer.subset_of[p];
      if (std::all_of(u.begin(), u.end(), [&](int v) { return v < nf; })) cands.push_back(p);
    }
    out.eta_candidates.push_back(std::move(cands));
  }
  return out;
}

struct CounterexamplePair {
  Graph g, h;
  std::vector<int> marks_g, marks_h;
};

struct VerifyReport {
  bool repr_equal = false;
  BigInt hom_g = 0, hom_h = 0;
  std::optional<BigInt> sub_g, sub_h;
  bool verdict = false;
};

namespace detail {

inline bool marked_repr_equal(ModelId model, const CounterexamplePair& p) {
  if (p.g.vertex_count() != p.h.vertex_count()) return false;
  ColorAssignment c = refine(model, std::vector<const Graph*>{&p.g, &p.h});
  switch (p.marks_g.size()) {
    case 0: return c.graph_repr(0) == c.graph_repr(1);
    case 1: return c.node_color(0, p.marks_g[0]) == c.node_color(1, p.marks_h[0]);
    default:
      return c.pair_color(0, p.marks_g[0], p.marks_g[1]) == c.pair_color(1, p.marks_h[0], p.marks_h[1]);
  }
}

inline void check_level(const RootedGraph& f, const FamilyId& fam, Level level) {
  if (static_cast<int>(f.roots.size()) != roots_for(level))
    throw DomainError(to_string(level) + " level needs " + std::to_string(roots_for(level)) + " roots");
  if (fam.kind != FamilyKind::MP && fam.kind != FamilyKind::Sub && fam.kind != FamilyKind::L &&
      fam.kind != FamilyKind::LF && fam.kind != FamilyKind::F)
    throw DomainError("counterexamples are built for base families only");
  if (fam.kind == FamilyKind::MP && level == Level::Edge) throw DomainError("MP has no edge-level family");
}

}  // namespace detail

inline VerifyReport verify_counterexample(const RootedGraph& f, const FamilyId& fam, Level level,
                                          const CounterexamplePair& pair, bool with_sub = false) {
  detail::check_level(f, fam, level);
  if (pair.marks_g.size() != f.roots.size() || pair.marks_h.size() != f.roots.size())
    throw DomainError("pair marks do not match the pattern roots");
  VerifyReport r;
  r.repr_equal = detail::marked_repr_equal(model_of(fam), pair);
  RootedGraph g(pair.g, pair.marks_g), h(pair.h, pair.marks_h);
  r.hom_g = hom_count(f, g);
  r.hom_h = hom_count(f, h);
  if (with_sub) {
    r.sub_g = sub_count(f, g);
    r.sub_h = sub_count(f, h);
  }
  r.verdict = r.repr_equal && r.hom_g != r.hom_h;
  return r;
}

inline CounterexamplePair build_counterexample(const RootedGraph& f, const FamilyId& fam, Level level,
                                               const Limits& limits = default_limits()) {
  detail::check_level(f, fam, level);
  if (in_family_rooted(f, fam, level, limits))
    throw DomainError("pattern lies in " + to_string(fam) + "; no counterexample exists");
  CounterexamplePair out;
  if (level == Level::Graph) {
    // Fürerize the component with the most edges (then most vertices) and keep the rest.
    auto comps = connected_components(f.graph);
    std::size_t best = 0;
    for (std::size_t i = 1; i < comps.size(); ++i) {
      auto size = [&](std::size_t c) {
        InducedSubgraph s = induced_subgraph(f.graph, comps[c]);
        return std::make_pair(s.graph.edge_count(), s.graph.vertex_count());
      };
      if (size(i) > size(best)) best = i;
    }
    FurerGraph fg = furer_graph(induced_subgraph(f.graph, comps[best]).graph);
    out.g = fg.graph;
    out.h = twist(fg, {fg.base.edges().front()});
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (i == best) continue;
      Graph rest = induced_subgraph(f.graph, comps[i]).graph;
      out.g = disjoint_union(out.g, rest);
      out.h = disjoint_union(out.h, rest);
    }
    return out;
  }

  CliquePair cp = clique_augmented_pair(f, 4);
  out.g = cp.g;
  out.h = cp.h;
  out.marks_g = cp.xi;
  ModelId model = model_of(fam);
  ColorAssignment c = refine(model, std::vector<const Graph*>{&cp.g, &cp.h});
  RootedGraph g_rooted(cp.g, cp.xi);
  BigInt hom_g = hom_count(f, g_rooted);
  std::optional<std::vector<int>> repr_only;
  auto consider = [&](const std::vector<int>& eta) -> bool {
    bool eq = eta.size() == 1 ? c.node_color(0, cp.xi[0]) == c.node_color(1, eta[0])
                              : c.pair_color(0, cp.xi[0], cp.xi[1]) == c.pair_color(1, eta[0], eta[1]);
    if (!eq) return false;
    if (hom_count(f, RootedGraph(cp.h, eta)) != hom_g) {
      out.marks_h = eta;
      return true;
    }
    if (!repr_only) repr_only = eta;
    return false;
  };
  bool found = false;
  if (cp.xi.size() == 1) {
    for (int a : cp.eta_candidates[0])
      if ((found = consider({a}))) break;
  } else {
    for (int a : cp.eta_candidates[0]) {
      for (int b : cp.eta_candidates[1])
        if ((found = consider({a, b}))) break;
      if (found) break;
    }
  }
  if (!found) {
    if (!repr_only) throw ConsistencyError("no marked vertex in the twisted graph matches the refinement colour");
    out.marks_h = *repr_only;
  }
  return out;
}

}  // namespace homexpr

#endif  // HOMEXPR_FURER_HPP
