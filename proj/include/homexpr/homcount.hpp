#ifndef HOMEXPR_HOMCOUNT_HPP
#define HOMEXPR_HOMCOUNT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "homexpr/bigint.hpp"
#include "homexpr/canonical.hpp"
#include "homexpr/errors.hpp"
#include "homexpr/graph.hpp"

namespace homexpr {

namespace detail {

inline void check_root_arity(const RootedGraph& f, const RootedGraph& g) {
  f.validate();
  g.validate();
  if (f.roots.size() != g.roots.size()) {
    throw DomainError("pattern has " + std::to_string(f.roots.size()) + " roots but target has " +
                      std::to_string(g.roots.size()));
  }
}

// Candidate images of every pattern vertex: label match plus root pinning.
// Returns false when some root is pinned inconsistently.
inline bool vertex_domains(const RootedGraph& f, const RootedGraph& g, std::vector<std::vector<int>>& dom) {
  int nf = f.graph.vertex_count(), ng = g.graph.vertex_count();
  std::vector<int> pinned(nf, -1);
  for (std::size_t i = 0; i < f.roots.size(); ++i) {
    int& p = pinned[f.roots[i]];
    if (p != -1 && p != g.roots[i]) return false;
    p = g.roots[i];
  }
  dom.assign(nf, {});
  for (int v = 0; v < nf; ++v) {
    if (pinned[v] != -1) {
      if (f.graph.label(v) == g.graph.label(pinned[v])) dom[v].push_back(pinned[v]);
    } else {
      for (int x = 0; x < ng; ++x)
        if (f.graph.label(v) == g.graph.label(x)) dom[v].push_back(x);
    }
  }
  return true;
}

// Placement order: roots first, then breadth-first, restarting from the
// highest-degree unplaced vertex in each new component.
inline std::vector<int> placement_order(const RootedGraph& f) {
  const Graph& g = f.graph;
  int n = g.vertex_count();
  std::vector<int> order;
  std::vector<char> placed(n, 0);
  auto bfs_from = [&](std::vector<int> seeds) {
    std::size_t head = order.size();
    for (int s : seeds)
      if (!placed[s]) {
        placed[s] = 1;
        order.push_back(s);
      }
    while (head < order.size()) {
      int v = order[head++];
      for (int w : g.neighbors(v))
        if (!placed[w]) {
          placed[w] = 1;
          order.push_back(w);
        }
    }
  };
  bfs_from(f.roots);
  while (static_cast<int>(order.size()) < n) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!placed[v] && (best == -1 || g.degree(v) > g.degree(best))) best = v;
    bfs_from({best});
  }
  return order;
}

// Plain backtracking over placements; counts leaves.
inline BigInt backtrack_count(const RootedGraph& f, const RootedGraph& g, bool injective) {
  std::vector<std::vector<int>> dom;
  if (!vertex_domains(f, g, dom)) return 0;
  int nf = f.graph.vertex_count();
  if (nf == 0) return 1;
  std::vector<int> order = placement_order(f);
  std::vector<int> pos(nf);
  for (int i = 0; i < nf; ++i) pos[order[i]] = i;
  // Earlier-placed neighbours of each vertex, and one of them to draw candidates from.
  std::vector<std::vector<int>> back(nf);
  for (int i = 0; i < nf; ++i)
    for (int w : f.graph.neighbors(order[i]))
      if (pos[w] < i) back[i].push_back(w);
  std::vector<std::vector<char>> allowed(nf, std::vector<char>(g.graph.vertex_count(), 0));
  for (int v = 0; v < nf; ++v)
    for (int x : dom[v]) allowed[v][x] = 1;

  std::vector<int> image(nf, -1);
  std::vector<int> used(g.graph.vertex_count(), 0);
  u128 leaves = 0;
  BigInt total = 0;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == nf) {
      if (++leaves == 0) {
        total += BigInt(1) << 128;
      }
      return;
    }
    int v = order[i];
    auto try_place = [&](int x) {
      if (!allowed[v][x]) return;
      if (injective && used[x]) return;
      for (int w : back[i])
        if (!g.graph.has_edge(image[w], x)) return;
      image[v] = x;
      ++used[x];
      self(self, i + 1);
      --used[x];
    };
    if (back[i].empty()) {
      for (int x : dom[v]) try_place(x);
    } else {
      for (int x : g.graph.neighbors(image[back[i][0]])) try_place(x);
    }
  };
  rec(rec, 0);
  return total + to_big(leaves);
}

// Variable elimination over dense factor tables indexed by target vertices.
template <class T>
class Eliminator {
 public:
  Eliminator(const RootedGraph& f, const RootedGraph& g, const std::vector<std::vector<int>>& dom)
      : f_(f.graph), g_(g.graph), n_(g.graph.vertex_count()), dom_(dom) {}

  T run() {
    int nf = f_.vertex_count();
    for (int v = 0; v < nf; ++v)
      if (dom_[v].empty()) return T(0);
    for (auto [a, b] : f_.edges()) {
      Factor fac;
      fac.scope = {std::min(a, b), std::max(a, b)};
      fac.table.assign(static_cast<std::size_t>(n_) * n_, T(0));
      int lo = fac.scope[0], hi = fac.scope[1];
      for (int x : dom_[lo])
        for (int y : g_.neighbors(x)) fac.table[x + static_cast<std::size_t>(y) * n_] = T(1);
      for (int y = 0; y < n_; ++y) {
        bool ok = std::find(dom_[hi].begin(), dom_[hi].end(), y) != dom_[hi].end();
        if (!ok)
          for (int x = 0; x < n_; ++x) fac.table[x + static_cast<std::size_t>(y) * n_] = T(0);
      }
      factors_.push_back(std::move(fac));
    }
    std::vector<char> eliminated(nf, 0);
    T scalar(1);
    for (int step = 0; step < nf; ++step) {
      int v = pick_next(eliminated);
      eliminated[v] = 1;
      eliminate(v, scalar);
      if (scalar == T(0)) return T(0);
    }
    return scalar;
  }

 private:
  struct Factor {
    std::vector<int> scope;  // sorted pattern vertices
    std::vector<T> table;    // index sum of assignment[scope[i]] * n^i
  };

  std::vector<int> neighbour_scope(int v) const {
    std::vector<int> u;
    for (const Factor& fac : factors_)
      if (std::binary_search(fac.scope.begin(), fac.scope.end(), v)) u.insert(u.end(), fac.scope.begin(), fac.scope.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
  }

  // Min-degree in the current interaction graph, ties by vertex index.
  int pick_next(const std::vector<char>& eliminated) const {
    int best = -1;
    std::size_t best_size = 0;
    for (int v = 0; v < static_cast<int>(eliminated.size()); ++v) {
      if (eliminated[v]) continue;
      std::size_t s = neighbour_scope(v).size();
      if (best == -1 || s < best_size) {
        best = v;
        best_size = s;
      }
    }
    return best;
  }

  void eliminate(int v, T& scalar) {
    std::vector<Factor> touching, rest;
    for (Factor& fac : factors_) {
      if (std::binary_search(fac.scope.begin(), fac.scope.end(), v)) touching.push_back(std::move(fac));
      else rest.push_back(std::move(fac));
    }
    factors_ = std::move(rest);
    if (touching.empty()) {
      scalar *= T(static_cast<unsigned long long>(dom_[v].size()));
      return;
    }
    std::vector<int> scope = neighbour_scope_of(touching);
    std::vector<int> out_scope;
    for (int u : scope)
      if (u != v) out_scope.push_back(u);
    std::size_t k = out_scope.size();
    if (k > 6) throw ResourceError("homomorphism count needs a factor of arity " + std::to_string(k));

    // Stride of each output variable inside each touching factor, plus v's stride.
    std::vector<std::vector<std::size_t>> stride(touching.size(), std::vector<std::size_t>(k, 0));
    std::vector<std::size_t> vstride(touching.size(), 0);
    for (std::size_t t = 0; t < touching.size(); ++t) {
      std::size_t s = 1;
      for (int u : touching[t].scope) {
        if (u == v) vstride[t] = s;
        else stride[t][std::lower_bound(out_scope.begin(), out_scope.end(), u) - out_scope.begin()] = s;
        s *= static_cast<std::size_t>(n_);
      }
    }

    std::size_t cells = 1;
    for (std::size_t i = 0; i < k; ++i) cells *= static_cast<std::size_t>(n_);
    Factor result;
    result.scope = out_scope;
    result.table.assign(cells, T(0));
    std::vector<int> digit(k, 0);
    std::vector<std::size_t> base(touching.size(), 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      bool feasible = true;
      for (std::size_t i = 0; i < k && feasible; ++i)
        if (!in_domain(out_scope[i], digit[i])) feasible = false;
      if (feasible) {
        T sum(0);
        for (int x : dom_[v]) {
          T prod(1);
          for (std::size_t t = 0; t < touching.size(); ++t) {
            const T& val = touching[t].table[base[t] + vstride[t] * static_cast<std::size_t>(x)];
            if (val == T(0)) {
              prod = T(0);
              break;
            }
            prod *= val;
          }
          sum += prod;
        }
        result.table[cell] = sum;
      }
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t t = 0; t < touching.size(); ++t) base[t] += stride[t][i];
        if (++digit[i] < n_) break;
        for (std::size_t t = 0; t < touching.size(); ++t) base[t] -= stride[t][i] * static_cast<std::size_t>(n_);
        digit[i] = 0;
      }
    }
    if (k == 0) scalar *= result.table[0];
    else factors_.push_back(std::move(result));
  }

  static std::vector<int> neighbour_scope_of(const std::vector<Factor>& fs) {
    std::vector<int> u;
    for (const Factor& fac : fs) u.insert(u.end(), fac.scope.begin(), fac.scope.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
  }

  bool in_domain(int v, int x) {
    if (member_.empty()) {
      member_.assign(dom_.size(), std::vector<char>(n_, 0));
      for (std::size_t u = 0; u < dom_.size(); ++u)
        for (int y : dom_[u]) member_[u][y] = 1;
    }
    return member_[v][x];
  }

  const Graph& f_;
  const Graph& g_;
  int n_;
  const std::vector<std::vector<int>>& dom_;
  std::vector<Factor> factors_;
  std::vector<std::vector<char>> member_;
};

}  // namespace detail

// Reference counter: backtracking over a breadth-first placement order.
inline BigInt hom_count_backtrack(const RootedGraph& f, const RootedGraph& g) {
  detail::check_root_arity(f, g);
  return detail::backtrack_count(f, g, false);
}

// Homomorphisms preserving edges, labels and root positions. Counted by
// variable elimination; 128-bit arithmetic when the trivial bound fits.
inline BigInt hom_count(const RootedGraph& f, const RootedGraph& g) {
  detail::check_root_arity(f, g);
  std::vector<std::vector<int>> dom;
  if (!detail::vertex_domains(f, g, dom)) return 0;
  int nf = f.graph.vertex_count(), ng = g.graph.vertex_count();
  if (nf == 0) return 1;
  if (ng == 0) return 0;
  double bits = nf * std::log2(static_cast<double>(ng) + 1.0);
  if (bits < 120.0) return to_big(detail::Eliminator<u128>(f, g, dom).run());
  return detail::Eliminator<BigInt>(f, g, dom).run();
}

inline BigInt hom_count(const Graph& f, const Graph& g) { return hom_count(RootedGraph(f), RootedGraph(g)); }

inline BigInt inj_hom_count(const RootedGraph& f, const RootedGraph& g) {
  detail::check_root_arity(f, g);
  if (f.graph.vertex_count() > g.graph.vertex_count()) return 0;
  return detail::backtrack_count(f, g, true);
}

inline BigInt inj_hom_count(const Graph& f, const Graph& g) { return inj_hom_count(RootedGraph(f), RootedGraph(g)); }

inline BigInt sub_count(const RootedGraph& f, const RootedGraph& g) {
  BigInt inj = inj_hom_count(f, g);
  BigInt aut = automorphism_count(f);
  if (inj % aut != 0) throw ConsistencyError("injective count is not a multiple of the automorphism count");
  return inj / aut;
}

inline BigInt sub_count(const Graph& f, const Graph& g) { return sub_count(RootedGraph(f), RootedGraph(g)); }

// Oracle: enumerate vertex subsets and edge subsets of the target directly and
// test each spanned subgraph for isomorphism with the pattern.
inline BigInt sub_count_direct(const RootedGraph& f, const RootedGraph& g) {
  detail::check_root_arity(f, g);
  int nf = f.graph.vertex_count(), ng = g.graph.vertex_count(), mf = f.graph.edge_count();
  if (nf > ng) return 0;
  if (ng > 12) throw ResourceError("direct subgraph enumeration is limited to 12 target vertices");
  CanonicalForm target = canonical_form(f);
  BigInt count = 0;
  std::vector<int> pick;
  auto with_vertices = [&]() {
    std::vector<int> local(ng, -1);
    for (std::size_t i = 0; i < pick.size(); ++i) local[pick[i]] = static_cast<int>(i);
    std::vector<int> roots;
    for (int r : g.roots) {
      if (local[r] == -1) return;
      roots.push_back(local[r]);
    }
    std::vector<Edge> inside;
    for (auto [a, b] : g.graph.edges())
      if (local[a] != -1 && local[b] != -1) inside.push_back({local[a], local[b]});
    if (static_cast<int>(inside.size()) < mf) return;
    std::vector<Edge> chosen;
    auto choose = [&](auto&& self, std::size_t start) -> void {
      if (static_cast<int>(chosen.size()) == mf) {
        Graph h(nf);
        for (int i = 0; i < nf; ++i) h.set_label(i, g.graph.label(pick[i]));
        for (auto [a, b] : chosen) h.add_edge(a, b);
        if (canonical_form(RootedGraph(h, roots)) == target) count += 1;
        return;
      }
      for (std::size_t e = start; e < inside.size(); ++e) {
        chosen.push_back(inside[e]);
        self(self, e + 1);
        chosen.pop_back();
      }
    };
    choose(choose, 0);
  };
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pick.size()) == nf) {
      with_vertices();
      return;
    }
    for (int v = start; v < ng; ++v) {
      pick.push_back(v);
      self(self, v + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return count;
}

inline std::vector<BigInt> hom_vector(const std::vector<RootedGraph>& fs, const RootedGraph& g) {
  std::vector<BigInt> out;
  out.reserve(fs.size());
  for (const RootedGraph& f : fs) out.push_back(hom_count(f, g));
  return out;
}

}  // namespace homexpr

#endif  // HOMEXPR_HOMCOUNT_HPP
