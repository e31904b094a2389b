#ifndef HOMEXPR_NED_HPP
#define HOMEXPR_NED_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "homexpr/errors.hpp"
#include "homexpr/graph.hpp"
#include "homexpr/limits.hpp"

namespace homexpr {

enum class NedVariant { General, Strong, AlmostStrong, EndpointShared };

inline std::string to_string(NedVariant v) {
  switch (v) {
    case NedVariant::General: return "General";
    case NedVariant::Strong: return "Strong";
    case NedVariant::AlmostStrong: return "AlmostStrong";
    case NedVariant::EndpointShared: return "EndpointShared";
  }
  return "?";
}

// Interval endpoints are vertex positions in the parent ear; {-1, -1} marks an
// empty interval. The interval covers the parent edges between those positions.
struct EarDecomposition {
  std::vector<std::vector<int>> ears;
  std::vector<int> parent;
  std::vector<std::pair<int, int>> interval;
};

namespace detail {

inline bool interval_empty(std::pair<int, int> i) { return i.first < 0; }
inline int interval_length(std::pair<int, int> i) { return interval_empty(i) ? 0 : i.second - i.first; }
inline bool interval_overlap(std::pair<int, int> a, std::pair<int, int> b) {
  if (interval_empty(a) || interval_empty(b)) return false;
  return std::max(a.first, b.first) < std::min(a.second, b.second);
}
inline bool interval_within(std::pair<int, int> inner, std::pair<int, int> outer) {
  if (interval_empty(inner)) return true;
  if (interval_empty(outer)) return false;
  return outer.first <= inner.first && inner.second <= outer.second;
}

// Checks a new child interval against the earlier children of the same parent.
inline bool sibling_ok(NedVariant v, const std::vector<std::pair<int, int>>& earlier, std::pair<int, int> now) {
  for (auto prev : earlier) {
    if (interval_overlap(prev, now) && !interval_within(prev, now)) return false;
    if (v == NedVariant::Strong && !interval_within(prev, now)) return false;
    if (v == NedVariant::AlmostStrong && interval_length(prev) > 1 && !interval_within(prev, now)) return false;
  }
  return true;
}

inline int components_with_edges(const Graph& g) {
  int c = 0;
  for (const auto& comp : connected_components(g))
    if (comp.size() > 1) ++c;
  return c;
}

}  // namespace detail

// Empty string when valid, otherwise the first violated clause.
inline std::string ned_violation(const Graph& g, const EarDecomposition& d, NedVariant variant) {
  int n = g.vertex_count();
  std::size_t m = d.ears.size();
  if (d.parent.size() != m || d.interval.size() != m) return "ear, parent and interval lists differ in length";
  std::vector<std::vector<int>> used(n, std::vector<int>(n, 0));
  for (std::size_t j = 0; j < m; ++j) {
    const auto& ear = d.ears[j];
    if (ear.size() < 2) return "ear " + std::to_string(j) + " has no edge";
    for (std::size_t k = 0; k < ear.size(); ++k) {
      if (ear[k] < 0 || ear[k] >= n) return "ear " + std::to_string(j) + " has an out-of-range vertex";
      for (std::size_t l = 0; l < k; ++l)
        if (ear[l] == ear[k]) return "ear " + std::to_string(j) + " is not a simple path";
    }
    for (std::size_t k = 0; k + 1 < ear.size(); ++k) {
      int a = ear[k], b = ear[k + 1];
      if (!g.has_edge(a, b)) return "ear " + std::to_string(j) + " uses a non-edge";
      if (used[a][b]++) return "edge " + std::to_string(a) + "-" + std::to_string(b) + " lies in two ears";
      used[b][a]++;
    }
  }
  for (auto [a, b] : g.edges())
    if (!used[a][b]) return "edge " + std::to_string(a) + "-" + std::to_string(b) + " lies in no ear";

  std::size_t c = static_cast<std::size_t>(detail::components_with_edges(g));
  if (m < c) return "fewer ears than components";
  std::vector<int> first_ear(n, -1);
  auto mark = [&](std::size_t j) {
    for (int v : d.ears[j])
      if (first_ear[v] == -1) first_ear[v] = static_cast<int>(j);
  };
  for (std::size_t j = 0; j < c; ++j) {
    if (d.parent[j] != -1 || !detail::interval_empty(d.interval[j]))
      return "ear " + std::to_string(j) + " is among the first ears and must not be nested";
    for (int v : d.ears[j])
      if (first_ear[v] != -1) return "first ears " + std::to_string(first_ear[v]) + " and " + std::to_string(j) + " intersect";
    mark(j);
  }
  for (std::size_t j = c; j < m; ++j) {
    int p = d.parent[j];
    if (p < 0 || static_cast<std::size_t>(p) >= j) return "ear " + std::to_string(j) + " has no earlier parent";
    const auto& par = d.ears[p];
    const auto& ear = d.ears[j];
    auto pos = [&](int v) {
      auto it = std::find(par.begin(), par.end(), v);
      return it == par.end() ? -1 : static_cast<int>(it - par.begin());
    };
    int p0 = pos(ear.front()), p1 = pos(ear.back());
    if (p0 < 0 && p1 < 0) return "ear " + std::to_string(j) + " has no endpoint on its parent";
    for (std::size_t k = 0; k < ear.size(); ++k) {
      bool attached = (k == 0 && p0 >= 0) || (k + 1 == ear.size() && p1 >= 0);
      if (!attached && first_ear[ear[k]] != -1 && first_ear[ear[k]] < static_cast<int>(j))
        return "ear " + std::to_string(j) + " reuses vertex " + std::to_string(ear[k]) + " of an earlier ear";
    }
    std::pair<int, int> expect{-1, -1};
    if (p0 >= 0 && p1 >= 0) expect = {std::min(p0, p1), std::max(p0, p1)};
    if (d.interval[j] != expect) return "ear " + std::to_string(j) + " has a wrong nested interval";
    mark(j);
  }
  for (std::size_t k = c; k < m; ++k) {
    std::vector<std::pair<int, int>> earlier;
    for (std::size_t j = c; j < k; ++j)
      if (d.parent[j] == d.parent[k]) earlier.push_back(d.interval[j]);
    if (!detail::sibling_ok(NedVariant::General, earlier, d.interval[k]))
      return "ear " + std::to_string(k) + " crosses the interval of an earlier sibling";
    if (!detail::sibling_ok(variant, earlier, d.interval[k]))
      return "ear " + std::to_string(k) + " breaks the " + to_string(variant) + " nesting rule";
  }
  if (variant == NedVariant::EndpointShared) {
    std::vector<int> common;
    bool first = true;
    for (std::size_t j = 0; j < m; ++j) {
      if (detail::interval_empty(d.interval[j])) continue;
      std::vector<int> ends{d.ears[j].front(), d.ears[j].back()};
      std::sort(ends.begin(), ends.end());
      if (first) common = ends;
      else {
        std::vector<int> keep;
        std::set_intersection(common.begin(), common.end(), ends.begin(), ends.end(), std::back_inserter(keep));
        common = keep;
      }
      first = false;
      if (common.empty()) return "ears with nested intervals share no endpoint";
    }
  }
  return "";
}

inline bool validate_ned(const Graph& g, const EarDecomposition& d, NedVariant variant) {
  return ned_violation(g, d, variant).empty();
}

namespace detail {

// Backtracking over ear forests generated in preorder. Siblings appear in
// increasing key order (interval length first), which loses no solutions:
// sorting siblings by interval length preserves every variant's nesting rule.
class NedSearch {
 public:
  NedSearch(const Graph& g, NedVariant v, const Limits& limits) : g_(g), v_(v), limits_(limits) {
    edges_ = g.edges();
    if (edges_.size() > 64 || g.vertex_count() > 64) throw ResourceError("ear decomposition search limited to 64 edges and vertices");
    inc_.assign(g.vertex_count(), 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      inc_[edges_[i].first] |= std::uint64_t{1} << i;
      inc_[edges_[i].second] |= std::uint64_t{1} << i;
    }
    index_.assign(g.vertex_count(), std::vector<int>(g.vertex_count(), -1));
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      index_[edges_[i].first][edges_[i].second] = static_cast<int>(i);
      index_[edges_[i].second][edges_[i].first] = static_cast<int>(i);
    }
  }

  // Decomposes the component whose edges are `target`; `ends` constrains the
  // first ear's endpoints.
  std::optional<EarDecomposition> run(std::uint64_t target, const std::vector<int>& ends, std::uint64_t shared) {
    target_ = target;
    ears_.clear();
    failed_.clear();
    std::vector<std::vector<int>> roots;
    int start_lo = 0, start_hi = g_.vertex_count();
    if (!ends.empty()) {
      start_lo = ends[0];
      start_hi = ends[0] + 1;
    }
    for (int s = start_lo; s < start_hi; ++s) {
      if (!(inc_[s] & target)) continue;
      std::vector<int> path{s};
      std::uint64_t seen = std::uint64_t{1} << s;
      collect_paths(path, seen, ends, roots);
    }
    for (auto& root : roots) {
      ears_.push_back(Ear{root, -1, {-1, -1}});
      std::uint64_t used = path_edges(root);
      std::uint64_t visited = 0;
      for (int v : root) visited |= std::uint64_t{1} << v;
      stack_.clear();
      stack_.push_back(Open{0, {}, {}});
      if (extend(used, visited, shared)) {
        EarDecomposition d;
        for (const Ear& e : ears_) {
          d.ears.push_back(e.path);
          d.parent.push_back(e.parent);
          d.interval.push_back(e.interval);
        }
        return d;
      }
      ears_.pop_back();
    }
    return std::nullopt;
  }

 private:
  struct Ear {
    std::vector<int> path;
    int parent;
    std::pair<int, int> interval;
  };
  using Key = std::tuple<int, int, int, int>;
  struct Open {
    int ear;
    std::vector<std::pair<int, int>> child_intervals;
    std::optional<Key> last_key;
  };

  std::uint64_t path_edges(const std::vector<int>& path) const {
    std::uint64_t m = 0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) m |= std::uint64_t{1} << index_[path[k]][path[k + 1]];
    return m;
  }

  void collect_paths(std::vector<int>& path, std::uint64_t seen, const std::vector<int>& ends,
                     std::vector<std::vector<int>>& out) const {
    int x = path.back();
    if (path.size() > 1) {
      bool ok;
      if (ends.size() == 2) ok = x == ends[1];
      else if (ends.size() == 1) ok = true;
      else ok = path.front() < x;
      if (ok) out.push_back(path);
    }
    for (int y : g_.neighbors(x)) {
      if ((seen >> y) & 1) continue;
      if (!((target_ >> index_[x][y]) & 1)) continue;
      path.push_back(y);
      collect_paths(path, seen | (std::uint64_t{1} << y), ends, out);
      path.pop_back();
    }
  }

  std::vector<int> open_vertices() const {
    std::vector<int> out;
    for (const Open& o : stack_)
      for (int v : ears_[o.ear].path) out.push_back(v);
    return out;
  }

  bool viable(std::uint64_t used, std::uint64_t visited) const {
    std::uint64_t left = target_ & ~used;
    std::uint64_t open_mask = 0;
    for (int v : open_vertices()) open_mask |= std::uint64_t{1} << v;
    for (std::uint64_t rest = left; rest;) {
      int e = std::countr_zero(rest);
      rest &= rest - 1;
      auto [a, b] = edges_[e];
      if (((visited >> a) & 1) && ((visited >> b) & 1)) {
        bool common = false;
        for (const Open& o : stack_) {
          const auto& p = ears_[o.ear].path;
          if (std::find(p.begin(), p.end(), a) != p.end() && std::find(p.begin(), p.end(), b) != p.end()) {
            common = true;
            break;
          }
        }
        if (!common) return false;
      }
    }
    while (left) {
      std::uint64_t comp = left & (~left + 1), frontier = comp;
      std::uint64_t touched = 0;
      while (frontier) {
        int e = std::countr_zero(frontier);
        frontier &= frontier - 1;
        for (int x : {edges_[e].first, edges_[e].second}) {
          touched |= std::uint64_t{1} << x;
          if ((visited >> x) & 1) continue;
          std::uint64_t add = inc_[x] & left & ~comp;
          comp |= add;
          frontier |= add;
        }
      }
      if (!(touched & open_mask)) return false;
      left &= ~comp;
    }
    return true;
  }

  std::string state_key(std::uint64_t used, std::uint64_t inter) const {
    std::ostringstream k;
    k << used << '/' << inter;
    for (const Open& o : stack_) {
      k << '|';
      for (int v : ears_[o.ear].path) k << v << ',';
      k << ':';
      for (auto iv : o.child_intervals) k << iv.first << '.' << iv.second << ',';
      if (o.last_key) {
        auto [a, b, c, d] = *o.last_key;
        k << '#' << a << '.' << b << '.' << c << '.' << d;
      }
    }
    return k.str();
  }

  bool extend(std::uint64_t used, std::uint64_t visited, std::uint64_t inter) {
    if ((used & target_) == target_) return true;
    if (++expansions_ > limits_.search_budget) throw ResourceError("ear decomposition search budget exceeded");
    if (!viable(used, visited)) return false;
    std::string key = state_key(used, inter);
    if (failed_.count(key)) return false;

    for (int depth = static_cast<int>(stack_.size()) - 1; depth >= 0; --depth) {
      std::vector<Open> closed(stack_.begin() + depth + 1, stack_.end());
      stack_.resize(depth + 1);
      int parent = stack_[depth].ear;
      const std::vector<int> par = ears_[parent].path;
      for (std::size_t i = 0; i < par.size(); ++i) {
        std::vector<int> path{par[i]};
        if (grow(path, static_cast<int>(i), used, visited, inter, depth)) return true;
      }
      stack_.insert(stack_.end(), closed.begin(), closed.end());
    }
    failed_.insert(key);
    return false;
  }

  // Extends `path` (starting on the parent at position `from`) edge by edge and
  // tries every valid ear along the way.
  bool grow(std::vector<int>& path, int from, std::uint64_t used, std::uint64_t visited, std::uint64_t inter,
            int depth) {
    int x = path.back();
    const std::vector<int> par = ears_[stack_[depth].ear].path;
    for (int y : g_.neighbors(x)) {
      int e = index_[x][y];
      if (!((target_ >> e) & 1) || ((used >> e) & 1)) continue;
      if (std::find(path.begin(), path.end(), y) != path.end()) continue;
      path.push_back(y);
      bool done = false;
      if ((visited >> y) & 1) {
        auto it = std::find(par.begin(), par.end(), y);
        int to = it == par.end() ? -1 : static_cast<int>(it - par.begin());
        if (to > from) done = attempt(path, {from, to}, used, visited, inter, depth);
      } else {
        done = attempt(path, {-1, -1}, used, visited, inter, depth) || grow(path, from, used, visited, inter, depth);
      }
      path.pop_back();
      if (done) return true;
    }
    return false;
  }

  bool attempt(const std::vector<int>& path, std::pair<int, int> interval, std::uint64_t used, std::uint64_t visited,
               std::uint64_t inter, int depth) {
    std::uint64_t edges = path_edges(path);
    const std::vector<int>& par = ears_[stack_[depth].ear].path;
    int attach = static_cast<int>(std::find(par.begin(), par.end(), path.front()) - par.begin());
    Key key{interval_length(interval), interval.first, attach, std::countr_zero(edges)};
    Open& top = stack_[depth];
    if (top.last_key && !(*top.last_key < key)) return false;
    if (!sibling_ok(v_, top.child_intervals, interval)) return false;
    std::uint64_t next_inter = inter;
    if (v_ == NedVariant::EndpointShared && !interval_empty(interval)) {
      next_inter &= (std::uint64_t{1} << path.front()) | (std::uint64_t{1} << path.back());
      if (!next_inter) return false;
    }
    std::uint64_t next_visited = visited;
    for (int v : path) next_visited |= std::uint64_t{1} << v;

    auto saved_key = top.last_key;
    top.child_intervals.push_back(interval);
    top.last_key = key;
    ears_.push_back(Ear{path, top.ear, interval});
    stack_.push_back(Open{static_cast<int>(ears_.size()) - 1, {}, {}});
    if (extend(used | edges, next_visited, next_inter)) return true;
    stack_.pop_back();
    ears_.pop_back();
    stack_[depth].child_intervals.pop_back();
    stack_[depth].last_key = saved_key;
    return false;
  }

  const Graph& g_;
  NedVariant v_;
  const Limits& limits_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> inc_;
  std::vector<std::vector<int>> index_;
  std::uint64_t target_ = 0;
  std::vector<Ear> ears_;
  std::vector<Open> stack_;
  std::unordered_set<std::string> failed_;
  long long expansions_ = 0;
};

}  // namespace detail

struct NedConstraints {
  std::vector<int> first_ear_ends;      // up to two endpoints of the first ear, in order
  std::optional<int> shared_endpoint;  // endpoint-shared variant: the common endpoint
};

// Returns a NED of the requested variant, or nothing when none exists.
// First-ear constraints require a connected graph.
inline std::optional<EarDecomposition> find_ned(const Graph& g, NedVariant variant, const NedConstraints& cons,
                                                const Limits& limits = default_limits()) {
  const std::vector<int>& first_ear_ends = cons.first_ear_ends;
  if (first_ear_ends.size() > 2) throw ValidationError("at most two first-ear endpoints");
  for (int v : first_ear_ends)
    if (v < 0 || v >= g.vertex_count()) throw ValidationError("first-ear endpoint out of range");
  if (!first_ear_ends.empty() && !is_connected(g)) throw DomainError("first-ear constraints need a connected graph");
  if (first_ear_ends.size() == 2 && first_ear_ends[0] == first_ear_ends[1])
    throw DomainError("first-ear endpoints must be distinct");
  std::uint64_t shared = ~std::uint64_t{0};
  if (cons.shared_endpoint) {
    int w = *cons.shared_endpoint;
    if (w < 0 || w >= g.vertex_count() || w >= 64) throw ValidationError("shared endpoint out of range");
    if (variant != NedVariant::EndpointShared) throw DomainError("a shared endpoint only applies to endpoint-shared NEDs");
    shared = std::uint64_t{1} << w;
  }
  if (g.edge_count() == 0) return EarDecomposition{};

  std::vector<std::vector<int>> comps;
  for (auto& comp : connected_components(g))
    if (comp.size() > 1) comps.push_back(comp);
  if (variant == NedVariant::EndpointShared) {
    int cyclic = 0;
    for (const auto& comp : comps)
      if (!is_forest(induced_subgraph(g, comp).graph)) ++cyclic;
    if (cyclic > 1) return std::nullopt;
  }

  std::vector<Edge> edges = g.edges();
  std::vector<EarDecomposition> parts;
  for (const auto& comp : comps) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (std::binary_search(comp.begin(), comp.end(), edges[i].first)) mask |= std::uint64_t{1} << i;
    detail::NedSearch search(g, variant, limits);
    auto part = search.run(mask, first_ear_ends, shared);
    if (!part) return std::nullopt;
    parts.push_back(std::move(*part));
  }

  // First ears of all components go first, then the remaining ears in order.
  EarDecomposition out;
  std::vector<std::vector<int>> remap(parts.size());
  for (std::size_t c = 0; c < parts.size(); ++c) {
    remap[c].assign(parts[c].ears.size(), -1);
    remap[c][0] = static_cast<int>(out.ears.size());
    out.ears.push_back(parts[c].ears[0]);
    out.parent.push_back(-1);
    out.interval.push_back({-1, -1});
  }
  for (std::size_t c = 0; c < parts.size(); ++c)
    for (std::size_t j = 1; j < parts[c].ears.size(); ++j) {
      remap[c][j] = static_cast<int>(out.ears.size());
      out.ears.push_back(parts[c].ears[j]);
      out.parent.push_back(remap[c][parts[c].parent[j]]);
      out.interval.push_back(parts[c].interval[j]);
    }
  return out;
}

inline std::optional<EarDecomposition> find_ned(const Graph& g, NedVariant variant,
                                                const std::vector<int>& first_ear_ends = {},
                                                const Limits& limits = default_limits()) {
  return find_ned(g, variant, NedConstraints{first_ear_ends, std::nullopt}, limits);
}

inline std::string serialize_ned(const EarDecomposition& d) {
  std::ostringstream out;
  for (std::size_t j = 0; j < d.ears.size(); ++j) {
    out << "ear " << j << " parent " << d.parent[j] << " interval ";
    if (detail::interval_empty(d.interval[j])) out << "-";
    else out << d.interval[j].first << ".." << d.interval[j].second;
    out << " :";
    for (int v : d.ears[j]) out << " " << v;
    out << "\n";
  }
  return out.str();
}

inline EarDecomposition parse_ned(const std::string& text) {
  EarDecomposition d;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    auto fail = [&]() { throw ValidationError("line " + std::to_string(line_no) + ": malformed ear line"); };
    int idx = 0, parent = 0;
    std::string pw, iw, range, colon;
    if (word != "ear" || !(ls >> idx >> pw >> parent >> iw >> range >> colon) || pw != "parent" ||
        iw != "interval" || colon != ":" || idx != static_cast<int>(d.ears.size()))
      fail();
    std::pair<int, int> interval{-1, -1};
    if (range != "-") {
      auto dots = range.find("..");
      if (dots == std::string::npos) fail();
      try {
        interval = {std::stoi(range.substr(0, dots)), std::stoi(range.substr(dots + 2))};
      } catch (const std::exception&) {
        fail();
      }
    }
    std::vector<int> ear;
    int v;
    while (ls >> v) ear.push_back(v);
    if (!ls.eof()) fail();
    d.ears.push_back(std::move(ear));
    d.parent.push_back(parent);
    d.interval.push_back(interval);
  }
  return d;
}

}  // namespace homexpr

#endif  // HOMEXPR_NED_HPP
