#ifndef HOMEXPR_TREEDEC_HPP
#define HOMEXPR_TREEDEC_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "homexpr/errors.hpp"
#include "homexpr/graph.hpp"
#include "homexpr/limits.hpp"

namespace homexpr {

// Width-2 families whose canonical tree decompositions are searched for.
enum class TdFamily { Sub, L, LF, F };

inline std::string to_string(TdFamily f) {
  switch (f) {
    case TdFamily::Sub: return "Sub";
    case TdFamily::L: return "L";
    case TdFamily::LF: return "LF";
    case TdFamily::F: return "F";
  }
  return "?";
}

struct TreeDecomposition {
  std::vector<int> parent;             // -1 for the root
  std::vector<std::vector<int>> bags;  // multisets, kept sorted

  int size() const { return static_cast<int>(bags.size()); }
  int add(int par, std::vector<int> bag) {
    std::sort(bag.begin(), bag.end());
    parent.push_back(par);
    bags.push_back(std::move(bag));
    return size() - 1;
  }
};

// Edges are in the same class iff consecutive edges on some path share a
// vertex outside the separator set.
inline std::vector<std::vector<Edge>> edge_components(const Graph& g, const std::vector<int>& separators) {
  std::vector<Edge> edges = g.edges();
  std::vector<int> parent(edges.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> sep(g.vertex_count(), 0);
  for (int s : separators) {
    if (s < 0 || s >= g.vertex_count()) throw ValidationError("separator out of range");
    sep[s] = 1;
  }
  std::vector<int> first_edge(g.vertex_count(), -1);
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (int x : {edges[i].first, edges[i].second}) {
      if (sep[x]) continue;
      if (first_edge[x] == -1) first_edge[x] = static_cast<int>(i);
      else parent[find(static_cast<int>(i))] = find(first_edge[x]);
    }
  std::map<int, std::vector<Edge>> classes;
  for (std::size_t i = 0; i < edges.size(); ++i) classes[find(static_cast<int>(i))].push_back(edges[i]);
  std::vector<std::vector<Edge>> out;
  for (auto& [root, cls] : classes) out.push_back(std::move(cls));
  std::sort(out.begin(), out.end());
  return out;
}

// Empty string when valid, otherwise the first violated clause.
inline std::string canonical_td_violation(const Graph& g, const TreeDecomposition& t, TdFamily f) {
  int n = g.vertex_count();
  int nodes = t.size();
  if (static_cast<int>(t.parent.size()) != nodes) return "parent and bag lists differ in length";
  if (nodes == 0) return n == 0 ? "" : "empty decomposition of a nonempty graph";
  std::vector<int> depth(nodes, -1);
  std::vector<std::vector<int>> children(nodes);
  int root = -1;
  for (int i = 0; i < nodes; ++i) {
    int p = t.parent[i];
    if (p == -1) {
      if (root != -1) return "more than one root";
      root = i;
    } else if (p < 0 || p >= nodes || p == i) {
      return "node " + std::to_string(i) + " has an invalid parent";
    } else {
      children[p].push_back(i);
    }
    for (int v : t.bags[i])
      if (v < 0 || v >= n) return "bag " + std::to_string(i) + " holds an out-of-range vertex";
  }
  if (root == -1) return "no root";
  std::vector<int> order{root};
  depth[root] = 0;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (int c : children[order[k]]) {
      depth[c] = depth[order[k]] + 1;
      order.push_back(c);
    }
  if (static_cast<int>(order.size()) != nodes) return "tree is not connected to the root";

  int max_depth = 0;
  for (int d : depth) max_depth = std::max(max_depth, d);
  if (max_depth % 2 != 0) return "depth is odd";
  for (int i = 0; i < nodes; ++i) {
    std::size_t want = depth[i] % 2 == 0 ? 2 : 3;
    if (t.bags[i].size() != want) return "bag " + std::to_string(i) + " has the wrong size";
  }
  for (int i = 0; i < nodes; ++i) {
    if (t.parent[i] == -1) continue;
    int even = depth[i] % 2 == 0 ? i : t.parent[i];
    int odd = even == i ? t.parent[i] : i;
    std::vector<int> a = t.bags[even], b = t.bags[odd];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (!std::includes(b.begin(), b.end(), a.begin(), a.end()))
      return "bag " + std::to_string(even) + " is not contained in the odd bag " + std::to_string(odd);
  }
  for (auto [u, v] : g.edges()) {
    bool covered = false;
    for (const auto& bag : t.bags)
      if (std::find(bag.begin(), bag.end(), u) != bag.end() && std::find(bag.begin(), bag.end(), v) != bag.end()) {
        covered = true;
        break;
      }
    if (!covered) return "edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag";
  }
  for (int v = 0; v < n; ++v) {
    int holders = 0, linked = 0;
    for (int i = 0; i < nodes; ++i) {
      bool here = std::find(t.bags[i].begin(), t.bags[i].end(), v) != t.bags[i].end();
      if (!here) continue;
      ++holders;
      int p = t.parent[i];
      if (p != -1 && std::find(t.bags[p].begin(), t.bags[p].end(), v) != t.bags[p].end()) ++linked;
    }
    if (holders == 0) return "vertex " + std::to_string(v) + " is in no bag";
    if (linked != holders - 1) return "nodes holding vertex " + std::to_string(v) + " are not connected";
  }

  if (f == TdFamily::Sub) {
    bool shared = false;
    for (int v = 0; v < n && !shared; ++v) {
      shared = true;
      for (const auto& bag : t.bags)
        if (std::find(bag.begin(), bag.end(), v) == bag.end()) {
          shared = false;
          break;
        }
    }
    if (!shared) return "no vertex lies in every bag";
  }
  if (f == TdFamily::L || f == TdFamily::LF) {
    for (int i = 0; i < nodes; ++i) {
      if (depth[i] % 2 == 0 || children[i].size() <= 1) continue;
      if (f == TdFamily::L) return "odd node " + std::to_string(i) + " has more than one child";
      std::vector<int> parent_bag = t.bags[t.parent[i]];
      std::vector<int> extra = t.bags[i];
      for (int v : parent_bag) extra.erase(std::find(extra.begin(), extra.end(), v));
      int w = extra[0];
      bool near = false;
      for (int u : parent_bag)
        if (u == w || g.has_edge(u, w)) near = true;
      if (!near) return "odd node " + std::to_string(i) + " branches although its new vertex is far from the parent bag";
    }
  }
  return "";
}

inline bool validate_canonical_td(const Graph& g, const TreeDecomposition& t, TdFamily f) {
  return canonical_td_violation(g, t, f).empty();
}

namespace detail {

// Search over pebble states (a, b, P) where P is one edge component of
// CC({a, b}). A move places w inside P; the remaining edges of P split into
// components that must each be strictly smaller and continue from {a, w} or
// {b, w} according to the family rule.
class TdSearch {
 public:
  TdSearch(const Graph& g, TdFamily f, const Limits& limits) : g_(g), f_(f), limits_(limits) {
    edges_ = g.edges();
    if (edges_.size() > 64) throw ResourceError("tree decomposition search limited to 64 edges");
    inc_.assign(g.vertex_count(), 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      inc_[edges_[i].first] |= std::uint64_t{1} << i;
      inc_[edges_[i].second] |= std::uint64_t{1} << i;
    }
  }

  std::uint64_t all_edges() const {
    return edges_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << edges_.size()) - 1;
  }

  std::vector<std::uint64_t> components(std::uint64_t mask, int a, int b, int c = -1) const {
    std::vector<std::uint64_t> out;
    std::uint64_t left = mask;
    while (left) {
      std::uint64_t comp = left & (~left + 1);
      std::uint64_t frontier = comp;
      while (frontier) {
        int e = std::countr_zero(frontier);
        frontier &= frontier - 1;
        for (int x : {edges_[e].first, edges_[e].second}) {
          if (x == a || x == b || x == c) continue;
          std::uint64_t add = inc_[x] & mask & ~comp;
          comp |= add;
          frontier |= add;
        }
      }
      out.push_back(comp);
      left &= ~comp;
    }
    return out;
  }

  bool touches(std::uint64_t mask, int v) const { return (inc_[v] & mask) != 0; }

  std::vector<int> vertices(std::uint64_t mask) const {
    std::vector<int> out;
    for (int v = 0; v < g_.vertex_count(); ++v)
      if (touches(mask, v)) out.push_back(v);
    return out;
  }

  // For Sub, a is the shared vertex and stays fixed.
  bool decide(int a, int b, std::uint64_t p) {
    if (std::popcount(p) == 1) {
      const Edge& e = edges_[std::countr_zero(p)];
      if ((e.first == a && e.second == b) || (e.first == b && e.second == a)) return true;
    }
    Key key = make_key(a, b, p);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second.ok;
    if (++expansions_ > limits_.search_budget) throw ResourceError("tree decomposition search budget exceeded");

    Choice found;
    bool ok = false;
    for (int w : vertices(p)) {
      if (w == a || w == b) continue;
      std::uint64_t inner = 0;
      for (int e : bits(p)) {
        auto [x, y] = edges_[e];
        bool xin = x == a || x == b || x == w;
        bool yin = y == a || y == b || y == w;
        if (xin && yin) inner |= std::uint64_t{1} << e;
      }
      std::vector<std::uint64_t> parts = components(p & ~inner, a, b, w);
      bool strict = true;
      for (std::uint64_t q : parts)
        if (q == p) strict = false;
      if (!strict) continue;
      std::vector<std::pair<int, std::uint64_t>> plan;
      if (try_move(a, b, w, parts, plan)) {
        found = Choice{w, std::move(plan)};
        ok = true;
        break;
      }
    }
    memo_[key] = Entry{ok, std::move(found)};
    return ok;
  }

  // Builds the subtree for state (a, b, p) below the even node `node`.
  void build(TreeDecomposition& td, int node, int a, int b, std::uint64_t p) const {
    if (std::popcount(p) == 1) {
      const Edge& e = edges_[std::countr_zero(p)];
      if ((e.first == a && e.second == b) || (e.first == b && e.second == a)) return;
    }
    const Entry& entry = memo_.at(make_key(a, b, p));
    int w = entry.choice.w;
    int odd = td.add(node, {a, b, w});
    std::map<int, int> shared_child;
    bool split = f_ == TdFamily::F || (f_ == TdFamily::LF && near(a, b, w));
    for (auto [keep, q] : entry.choice.plan) {
      int child;
      if (split) {
        child = td.add(odd, {keep, w});
      } else {
        auto it = shared_child.find(keep);
        if (it == shared_child.end()) it = shared_child.emplace(keep, td.add(odd, {keep, w})).first;
        child = it->second;
      }
      build(td, child, keep, w, q);
    }
    if (entry.choice.plan.empty()) td.add(odd, {a, w});
  }

 private:
  struct Choice {
    int w = -1;
    std::vector<std::pair<int, std::uint64_t>> plan;  // (kept vertex, component)
  };
  struct Entry {
    bool ok = false;
    Choice choice;
  };
  using Key = std::tuple<int, int, std::uint64_t>;

  Key make_key(int a, int b, std::uint64_t p) const {
    if (f_ != TdFamily::Sub && a > b) std::swap(a, b);
    return {a, b, p};
  }

  static std::vector<int> bits(std::uint64_t m) {
    std::vector<int> out;
    while (m) {
      out.push_back(std::countr_zero(m));
      m &= m - 1;
    }
    return out;
  }

  bool near(int a, int b, int w) const { return g_.has_edge(a, w) || g_.has_edge(b, w); }

  // Can q continue from the pebble pair {keep, w} after the other pebble leaves?
  bool allowed(int a, int b, int keep, std::uint64_t q) const {
    int other = keep == a ? b : a;
    if (other == keep) return true;
    return !touches(q, other);
  }

  bool try_move(int a, int b, int w, const std::vector<std::uint64_t>& parts,
                std::vector<std::pair<int, std::uint64_t>>& plan) {
    plan.clear();
    bool independent = f_ == TdFamily::F || (f_ == TdFamily::LF && near(a, b, w));
    if (f_ == TdFamily::Sub) {
      for (std::uint64_t q : parts) {
        if (!allowed(a, b, a, q) || !decide(a, w, q)) return false;
        plan.emplace_back(a, q);
      }
      return true;
    }
    if (independent) {
      for (std::uint64_t q : parts) {
        if (allowed(a, b, a, q) && decide(a, w, q)) plan.emplace_back(a, q);
        else if (allowed(a, b, b, q) && decide(b, w, q)) plan.emplace_back(b, q);
        else return false;
      }
      return true;
    }
    for (int keep : {a, b}) {
      plan.clear();
      bool good = true;
      for (std::uint64_t q : parts)
        if (!allowed(a, b, keep, q) || !decide(keep, w, q)) {
          good = false;
          break;
        }
        else plan.emplace_back(keep, q);
      if (good) return true;
      if (a == b) break;
    }
    return false;
  }

  const Graph& g_;
  TdFamily f_;
  const Limits& limits_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> inc_;
  std::map<Key, Entry> memo_;
  long long expansions_ = 0;
};

}  // namespace detail

// Searches for a canonical width-2 tree decomposition in the given family.
// root_bag fixes the root: {w, w} for node level, {w, x} for edge level.
// Without a root bag every vertex is tried as the root {a, a}.
inline std::optional<TreeDecomposition> find_canonical_td(const Graph& g, TdFamily f,
                                                          std::optional<std::pair<int, int>> root_bag = std::nullopt,
                                                          const Limits& limits = default_limits()) {
  int n = g.vertex_count();
  if (!is_connected(g)) throw DomainError("canonical tree decomposition search needs a connected graph");
  if (n == 0) return TreeDecomposition{};
  detail::TdSearch search(g, f, limits);
  auto attempt = [&](int a, int b) -> std::optional<TreeDecomposition> {
    std::vector<std::uint64_t> parts = search.components(search.all_edges(), a, b);
    for (std::uint64_t p : parts)
      if (!search.decide(a, b, p)) return std::nullopt;
    TreeDecomposition td;
    int root = td.add(-1, {a, b});
    for (std::uint64_t p : parts) search.build(td, root, a, b, p);
    return td;
  };
  if (root_bag) {
    auto [a, b] = *root_bag;
    if (a < 0 || a >= n || b < 0 || b >= n) throw ValidationError("root bag vertex out of range");
    return attempt(a, b);
  }
  for (int a = 0; a < n; ++a)
    if (auto td = attempt(a, a)) return td;
  return std::nullopt;
}

inline std::string serialize_td(const TreeDecomposition& t) {
  std::ostringstream out;
  for (int i = 0; i < t.size(); ++i) {
    out << "bag " << i << " parent " << t.parent[i] << " :";
    for (int v : t.bags[i]) out << " " << v;
    out << "\n";
  }
  return out.str();
}

inline TreeDecomposition parse_td(const std::string& text) {
  TreeDecomposition t;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    int node = 0, parent = 0;
    std::string par_word, colon;
    if (word != "bag" || !(ls >> node >> par_word >> parent >> colon) || par_word != "parent" || colon != ":" ||
        node != t.size())
      throw ValidationError("line " + std::to_string(line_no) + ": malformed bag line");
    std::vector<int> bag;
    int v;
    while (ls >> v) bag.push_back(v);
    if (!ls.eof()) throw ValidationError("line " + std::to_string(line_no) + ": malformed vertex");
    t.parent.push_back(parent);
    t.bags.push_back(std::move(bag));
  }
  return t;
}

}  // namespace homexpr

#endif  // HOMEXPR_TREEDEC_HPP
