#ifndef HOMEXPR_ENUMERATE_HPP
#define HOMEXPR_ENUMERATE_HPP

#include <algorithm>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "homexpr/canonical.hpp"
#include "homexpr/graph.hpp"
#include "homexpr/graph_io.hpp"
#include "homexpr/limits.hpp"

namespace homexpr {

namespace detail {

class CanonicalCollector {
 public:
  void offer(const RootedGraph& rg) {
    CanonicalResult r = canonical_search(rg);
    if (!seen_.insert(r.form.bytes).second) return;
    std::vector<int> perm(rg.graph.vertex_count());
    for (std::size_t p = 0; p < r.order.size(); ++p) perm[r.order[p]] = static_cast<int>(p);
    items_.emplace(std::move(r.form.bytes), permuted(rg, perm));
  }

  // Ordered by (vertex count, edge count, canonical bytes).
  std::vector<RootedGraph> take() {
    std::vector<std::pair<std::string, RootedGraph>> all(items_.begin(), items_.end());
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      const Graph& x = a.second.graph;
      const Graph& y = b.second.graph;
      if (x.vertex_count() != y.vertex_count()) return x.vertex_count() < y.vertex_count();
      if (x.edge_count() != y.edge_count()) return x.edge_count() < y.edge_count();
      return a.first < b.first;
    });
    std::vector<RootedGraph> out;
    out.reserve(all.size());
    for (auto& item : all) out.push_back(std::move(item.second));
    return out;
  }

 private:
  std::unordered_set<std::string> seen_;
  std::map<std::string, RootedGraph> items_;
};

inline std::vector<Graph> strip_roots(std::vector<RootedGraph> v) {
  std::vector<Graph> out;
  out.reserve(v.size());
  for (auto& rg : v) out.push_back(std::move(rg.graph));
  return out;
}

}  // namespace detail

// One representative per isomorphism class of connected graphs on exactly n vertices.
inline std::vector<Graph> connected_graphs_with_vertices(int n, const Limits& limits = default_limits()) {
  if (n > limits.enum_vertices) {
    throw ResourceError("vertex bound " + std::to_string(n) + " exceeds limit " + std::to_string(limits.enum_vertices));
  }
  if (n <= 0) return {};
  std::vector<Graph> level{Graph(1)};
  for (int k = 2; k <= n; ++k) {
    detail::CanonicalCollector collect;
    for (const Graph& g : level) {
      int old = g.vertex_count();
      for (int mask = 1; mask < (1 << old); ++mask) {
        Graph h(old + 1);
        for (auto [u, v] : g.edges()) h.add_edge(u, v);
        for (int u = 0; u < old; ++u)
          if (mask >> u & 1) h.add_edge(u, old);
        collect.offer(RootedGraph(std::move(h)));
      }
    }
    level = detail::strip_roots(collect.take());
  }
  return level;
}

// One representative per isomorphism class of connected graphs with exactly m edges.
inline std::vector<Graph> connected_graphs_with_edges(int m, const Limits& limits = default_limits()) {
  if (m > limits.enum_edges) {
    throw ResourceError("edge bound " + std::to_string(m) + " exceeds limit " + std::to_string(limits.enum_edges));
  }
  if (m < 0) return {};
  std::vector<Graph> level{Graph(1)};
  for (int k = 1; k <= m; ++k) {
    detail::CanonicalCollector collect;
    for (const Graph& g : level) {
      int n = g.vertex_count();
      for (int u = 0; u < n; ++u) {
        Graph h(n + 1);
        for (auto [a, b] : g.edges()) h.add_edge(a, b);
        h.add_edge(u, n);
        collect.offer(RootedGraph(std::move(h)));
        for (int v = u + 1; v < n; ++v) {
          if (g.has_edge(u, v)) continue;
          Graph c = g;
          c.add_edge(u, v);
          collect.offer(RootedGraph(std::move(c)));
        }
      }
    }
    level = detail::strip_roots(collect.take());
  }
  return level;
}

// One representative per orbit of vertices (marks = 1) or of ordered pairs of
// distinct vertices (marks = 2).
inline std::vector<RootedGraph> enumerate_rooted(const Graph& g, int marks) {
  if (marks != 1 && marks != 2) throw DomainError("marks must be 1 or 2");
  detail::CanonicalCollector collect;
  int n = g.vertex_count();
  for (int u = 0; u < n; ++u) {
    if (marks == 1) {
      collect.offer(RootedGraph(g, {u}));
      continue;
    }
    for (int v = 0; v < n; ++v)
      if (v != u) collect.offer(RootedGraph(g, {u, v}));
  }
  return collect.take();
}

// Reads one graph6 record per line; blank lines are skipped.
inline std::vector<Graph> read_graph6_lines(const std::string& text) {
  std::vector<Graph> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) out.push_back(parse_graph6(line));
    pos = nl + 1;
  }
  return out;
}

}  // namespace homexpr

#endif  // HOMEXPR_ENUMERATE_HPP
