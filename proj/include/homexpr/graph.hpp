#ifndef HOMEXPR_GRAPH_HPP
#define HOMEXPR_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "homexpr/errors.hpp"

namespace homexpr {

using Edge = std::pair<int, int>;

// Simple undirected vertex-labeled graph. Adjacency lists stay sorted and a
// bit matrix backs has_edge.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) { reset(n); }

  void reset(int n) {
    if (n < 0) throw ValidationError("negative vertex count");
    n_ = n;
    words_ = (n + 63) / 64;
    adj_.assign(n, {});
    bits_.assign(static_cast<std::size_t>(n) * words_, 0);
    labels_.assign(n, 0);
    m_ = 0;
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return m_; }

  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw ValidationError("self-loop on vertex " + std::to_string(u));
    if (has_edge(u, v)) {
      throw ValidationError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    set_bit(u, v);
    set_bit(v, u);
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
    ++m_;
  }

  // Adds the edge unless it is already present; returns whether it was new.
  bool add_edge_if_absent(int u, int v) {
    if (has_edge(u, v)) return false;
    add_edge(u, v);
    return true;
  }

  void remove_edge(int u, int v) {
    if (!has_edge(u, v)) throw ValidationError("edge not present");
    clear_bit(u, v);
    clear_bit(v, u);
    adj_[u].erase(std::lower_bound(adj_[u].begin(), adj_[u].end(), v));
    adj_[v].erase(std::lower_bound(adj_[v].begin(), adj_[v].end(), u));
    --m_;
  }

  void toggle_edge(int u, int v) {
    if (has_edge(u, v)) remove_edge(u, v);
    else add_edge(u, v);
  }

  bool has_edge(int u, int v) const {
    return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }

  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  int label(int v) const { return labels_[v]; }
  void set_label(int v, int l) {
    check_vertex(v);
    labels_[v] = l;
  }
  const std::vector<int>& labels() const { return labels_; }

  // Edges as (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (int u = 0; u < n_; ++u)
      for (int v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  const std::uint64_t* row(int v) const { return bits_.data() + static_cast<std::size_t>(v) * words_; }
  int words() const { return words_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.labels_ == b.labels_ && a.adj_ == b.adj_;
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) {
      throw ValidationError("vertex " + std::to_string(v) + " out of range [0," + std::to_string(n_) + ")");
    }
  }
  void set_bit(int u, int v) { bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63); }
  void clear_bit(int u, int v) { bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] &= ~(std::uint64_t{1} << (v & 63)); }

  int n_ = 0;
  int m_ = 0;
  int words_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint64_t> bits_;
  std::vector<int> labels_;
};

struct RootedGraph {
  Graph graph;
  std::vector<int> roots;

  RootedGraph() = default;
  RootedGraph(Graph g, std::vector<int> r = {}) : graph(std::move(g)), roots(std::move(r)) { validate(); }

  void validate() const {
    if (roots.size() > 2) throw ValidationError("at most two roots are supported");
    for (int r : roots)
      if (r < 0 || r >= graph.vertex_count()) throw ValidationError("root " + std::to_string(r) + " out of range");
  }

  friend bool operator==(const RootedGraph& a, const RootedGraph& b) {
    return a.graph == b.graph && a.roots == b.roots;
  }
};

inline Graph graph_from_edges(int n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline Graph star_graph(int leaves) {
  Graph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

inline Graph grid_graph(int rows, int cols) {
  Graph g(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (c + 1 < cols) g.add_edge(v, v + 1);
      if (r + 1 < rows) g.add_edge(v, v + cols);
    }
  return g;
}

inline std::vector<std::vector<int>> connected_components(const Graph& g) {
  int n = g.vertex_count();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    std::vector<int> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < members.size(); ++i)
      for (int w : g.neighbors(members[i]))
        if (comp[w] == -1) {
          comp[w] = comp[s];
          members.push_back(w);
        }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

inline bool is_forest(const Graph& g) {
  return g.edge_count() + static_cast<int>(connected_components(g).size()) == g.vertex_count();
}

struct InducedSubgraph {
  Graph graph;
  std::vector<int> original;  // new index -> old index
};

inline InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& keep_sorted) {
  std::vector<int> index(g.vertex_count(), -1);
  for (std::size_t i = 0; i < keep_sorted.size(); ++i) index[keep_sorted[i]] = static_cast<int>(i);
  InducedSubgraph out{Graph(static_cast<int>(keep_sorted.size())), keep_sorted};
  for (std::size_t i = 0; i < keep_sorted.size(); ++i) {
    int v = keep_sorted[i];
    out.graph.set_label(static_cast<int>(i), g.label(v));
    for (int w : g.neighbors(v))
      if (index[w] > static_cast<int>(i)) out.graph.add_edge(static_cast<int>(i), index[w]);
  }
  return out;
}

inline InducedSubgraph vertex_deleted(const Graph& g, const std::vector<int>& removed) {
  std::vector<char> gone(g.vertex_count(), 0);
  for (int v : removed) {
    if (v < 0 || v >= g.vertex_count()) throw ValidationError("deleted vertex out of range");
    gone[v] = 1;
  }
  std::vector<int> keep;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!gone[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

inline Graph disjoint_union(const Graph& g, const Graph& h) {
  int n = g.vertex_count();
  Graph out(n + h.vertex_count());
  for (int v = 0; v < n; ++v) out.set_label(v, g.label(v));
  for (int v = 0; v < h.vertex_count(); ++v) out.set_label(n + v, h.label(v));
  for (auto [u, v] : g.edges()) out.add_edge(u, v);
  for (auto [u, v] : h.edges()) out.add_edge(n + u, n + v);
  return out;
}

// Vertex (a, b) gets index a * |V_h| + b. Labels of pairs are interned in
// order of first appearance so that equal label pairs share a label.
inline Graph categorical_product(const Graph& g, const Graph& h) {
  int ng = g.vertex_count(), nh = h.vertex_count();
  Graph out(ng * nh);
  std::vector<std::pair<int, int>> seen;
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < nh; ++b) {
      std::pair<int, int> key{g.label(a), h.label(b)};
      auto it = std::find(seen.begin(), seen.end(), key);
      int id = static_cast<int>(it - seen.begin());
      if (it == seen.end()) seen.push_back(key);
      out.set_label(a * nh + b, id);
    }
  for (auto [a, a2] : g.edges())
    for (auto [b, b2] : h.edges()) {
      out.add_edge(a * nh + b, a2 * nh + b2);
      out.add_edge(a * nh + b2, a2 * nh + b);
    }
  return out;
}

inline RootedGraph categorical_product(const RootedGraph& g, const RootedGraph& h) {
  if (g.roots.size() != h.roots.size()) throw DomainError("root counts differ in product");
  RootedGraph out;
  out.graph = categorical_product(g.graph, h.graph);
  for (std::size_t i = 0; i < g.roots.size(); ++i)
    out.roots.push_back(g.roots[i] * h.graph.vertex_count() + h.roots[i]);
  return out;
}

// Applies a vertex permutation: vertex v of g becomes perm[v].
inline Graph permuted(const Graph& g, const std::vector<int>& perm) {
  Graph out(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) out.set_label(perm[v], g.label(v));
  for (auto [u, v] : g.edges()) out.add_edge(perm[u], perm[v]);
  return out;
}

inline RootedGraph permuted(const RootedGraph& g, const std::vector<int>& perm) {
  RootedGraph out;
  out.graph = permuted(g.graph, perm);
  for (int r : g.roots) out.roots.push_back(perm[r]);
  return out;
}

}  // namespace homexpr

#endif  // HOMEXPR_GRAPH_HPP
