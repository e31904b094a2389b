#ifndef HOMEXPR_CANONICAL_HPP
#define HOMEXPR_CANONICAL_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "homexpr/bigint.hpp"
#include "homexpr/graph.hpp"
#include "homexpr/limits.hpp"

namespace homexpr {

struct CanonicalForm {
  std::string bytes;
  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.bytes == b.bytes; }
  friend bool operator!=(const CanonicalForm& a, const CanonicalForm& b) { return a.bytes != b.bytes; }
  friend bool operator<(const CanonicalForm& a, const CanonicalForm& b) { return a.bytes < b.bytes; }
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& f) const { return std::hash<std::string>{}(f.bytes); }
};

struct CanonicalResult {
  CanonicalForm form;
  std::vector<int> order;                   // canonical position -> vertex
  std::vector<std::vector<int>> generators;  // automorphisms found during the search
  BigInt automorphisms = 1;
};

namespace detail {

// Individualization-refinement search with automorphism pruning. Cells are
// ordered; refinement splits every cell by the sorted list of neighbor cell
// indices, which keeps the whole procedure isomorphism invariant.
class CanonicalSearch {
 public:
  CanonicalSearch(const Graph& g, const std::vector<long long>& keys) : g_(g), n_(g.vertex_count()) {
    std::vector<int> verts(n_);
    std::iota(verts.begin(), verts.end(), 0);
    std::stable_sort(verts.begin(), verts.end(), [&](int a, int b) { return keys[a] < keys[b]; });
    std::vector<std::vector<int>> cells;
    for (int i = 0; i < n_;) {
      int j = i;
      std::vector<int> cell;
      while (j < n_ && keys[verts[j]] == keys[verts[i]]) cell.push_back(verts[j++]);
      cells.push_back(std::move(cell));
      i = j;
    }
    cell_of_.assign(n_, 0);
    uf_.assign(n_, 0);
    search(std::move(cells), 0);
  }

  CanonicalResult result() && {
    CanonicalResult r;
    r.form.bytes = std::move(best_cert_);
    r.order = std::move(best_order_);
    r.generators = std::move(generators_);
    r.automorphisms = std::move(aut_);
    return r;
  }

 private:
  void refine(std::vector<std::vector<int>>& cells) {
    std::vector<std::pair<std::vector<int>, int>> sig;
    for (;;) {
      for (std::size_t i = 0; i < cells.size(); ++i)
        for (int v : cells[i]) cell_of_[v] = static_cast<int>(i);
      bool changed = false;
      std::vector<std::vector<int>> next;
      next.reserve(cells.size());
      for (auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(std::move(cell));
          continue;
        }
        sig.clear();
        for (int v : cell) {
          std::vector<int> s;
          s.reserve(g_.degree(v));
          for (int w : g_.neighbors(v)) s.push_back(cell_of_[w]);
          std::sort(s.begin(), s.end());
          sig.emplace_back(std::move(s), v);
        }
        std::sort(sig.begin(), sig.end());
        std::size_t start = next.size();
        next.emplace_back();
        for (std::size_t k = 0; k < sig.size(); ++k) {
          if (k > 0 && sig[k].first != sig[k - 1].first) next.emplace_back();
          next.back().push_back(sig[k].second);
        }
        if (next.size() - start > 1) changed = true;
      }
      cells = std::move(next);
      if (!changed) return;
    }
  }

  std::string certificate(const std::vector<int>& order) const {
    std::string out;
    out.reserve(static_cast<std::size_t>(n_) * n_ / 16 + 1);
    unsigned char acc = 0;
    int filled = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        acc = static_cast<unsigned char>((acc << 1) | (g_.has_edge(order[i], order[j]) ? 1 : 0));
        if (++filled == 8) {
          out.push_back(static_cast<char>(acc));
          acc = 0;
          filled = 0;
        }
      }
    if (filled > 0) out.push_back(static_cast<char>(acc << (8 - filled)));
    return out;
  }

  int find(int x) {
    while (uf_[x] != x) x = uf_[x] = uf_[uf_[x]];
    return x;
  }

  // Orbit representatives under the generators that fix the current path.
  void stabilizer_orbits() {
    std::iota(uf_.begin(), uf_.end(), 0);
    for (const auto& gen : generators_) {
      bool fixes = true;
      for (int p : path_)
        if (gen[p] != p) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        int a = find(v), b = find(gen[v]);
        if (a != b) uf_[a] = b;
      }
    }
  }

  static std::size_t common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
  }

  void add_generator(const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> gen(n_);
    for (int p = 0; p < n_; ++p) gen[from[p]] = to[p];
    bool identity = true;
    for (int v = 0; v < n_; ++v)
      if (gen[v] != v) identity = false;
    if (!identity) generators_.push_back(std::move(gen));
  }

  // Returns -1 to continue normally, otherwise the depth to unwind to.
  int search(std::vector<std::vector<int>> cells, int depth) {
    refine(cells);
    if (cells.size() == static_cast<std::size_t>(n_)) {
      std::vector<int> order(n_);
      for (int p = 0; p < n_; ++p) order[p] = cells[p][0];
      std::string cert = certificate(order);
      if (!have_first_) {
        have_first_ = true;
        first_order_ = best_order_ = order;
        first_cert_ = best_cert_ = cert;
        first_path_ = best_path_ = path_;
        return -1;
      }
      if (cert == first_cert_) {
        add_generator(first_order_, order);
        return static_cast<int>(common_prefix(path_, first_path_));
      }
      if (cert == best_cert_) {
        add_generator(best_order_, order);
        return static_cast<int>(common_prefix(path_, best_path_));
      }
      if (cert < best_cert_) {
        best_cert_ = std::move(cert);
        best_order_ = std::move(order);
        best_path_ = path_;
      }
      return -1;
    }

    std::size_t target = 0;
    std::size_t best_size = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i].size() > 1 && cells[i].size() < best_size) {
        best_size = cells[i].size();
        target = i;
      }
    std::vector<int> candidates = cells[target];
    std::sort(candidates.begin(), candidates.end());
    bool on_first_path = !have_first_;
    std::vector<int> explored;
    for (int v : candidates) {
      if (!explored.empty()) {
        stabilizer_orbits();
        bool pruned = false;
        for (int e : explored)
          if (find(e) == find(v)) {
            pruned = true;
            break;
          }
        if (pruned) continue;
      }
      std::vector<std::vector<int>> child;
      child.reserve(cells.size() + 1);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != target) {
          child.push_back(cells[i]);
          continue;
        }
        child.push_back({v});
        std::vector<int> rest;
        for (int w : cells[i])
          if (w != v) rest.push_back(w);
        child.push_back(std::move(rest));
      }
      path_.push_back(v);
      int jump = search(std::move(child), depth + 1);
      path_.pop_back();
      explored.push_back(v);
      if (jump != -1 && jump < depth) return jump;
    }
    if (on_first_path) {
      stabilizer_orbits();
      int root = find(first_path_[depth]);
      long long orbit = 0;
      for (int v = 0; v < n_; ++v)
        if (find(v) == root) ++orbit;
      aut_ *= orbit;
    }
    return -1;
  }

  const Graph& g_;
  int n_;
  std::vector<int> cell_of_;
  std::vector<int> uf_;
  std::vector<int> path_;
  bool have_first_ = false;
  std::vector<int> first_order_, best_order_, first_path_, best_path_;
  std::string first_cert_, best_cert_;
  std::vector<std::vector<int>> generators_;
  BigInt aut_ = 1;
};

inline std::vector<long long> vertex_keys(const RootedGraph& rg) {
  const Graph& g = rg.graph;
  std::vector<long long> keys(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    long long mask = 0;
    for (std::size_t i = 0; i < rg.roots.size(); ++i)
      if (rg.roots[i] == v) mask |= 1LL << i;
    keys[v] = (static_cast<long long>(g.label(v)) << 8) | mask;
  }
  return keys;
}

inline void append_int(std::string& out, long long v) {
  for (int s = 56; s >= 0; s -= 8) out.push_back(static_cast<char>((v >> s) & 0xff));
}

}  // namespace detail

inline CanonicalResult canonical_search(const RootedGraph& rg, const Limits& limits = default_limits()) {
  rg.validate();
  const Graph& g = rg.graph;
  if (g.vertex_count() > limits.iso_vertices) {
    throw ResourceError("canonical form limited to " + std::to_string(limits.iso_vertices) + " vertices");
  }
  std::vector<long long> keys = detail::vertex_keys(rg);
  CanonicalResult r;
  if (g.vertex_count() == 0) {
    r.form.bytes.clear();
  } else {
    r = detail::CanonicalSearch(g, keys).result();
  }
  std::string header;
  detail::append_int(header, g.vertex_count());
  detail::append_int(header, static_cast<long long>(rg.roots.size()));
  for (int v : r.order) detail::append_int(header, keys[v] - (static_cast<long long>(g.label(v)) << 8));
  for (int v : r.order) detail::append_int(header, g.label(v));
  r.form.bytes = header + r.form.bytes;
  return r;
}

inline CanonicalForm canonical_form(const RootedGraph& rg) { return canonical_search(rg).form; }
inline CanonicalForm canonical_form(const Graph& g) { return canonical_search(RootedGraph(g)).form; }

inline bool are_isomorphic(const RootedGraph& a, const RootedGraph& b) {
  if (a.graph.vertex_count() != b.graph.vertex_count() || a.graph.edge_count() != b.graph.edge_count() ||
      a.roots.size() != b.roots.size())
    return false;
  return canonical_form(a) == canonical_form(b);
}

inline bool are_isomorphic(const Graph& a, const Graph& b) { return are_isomorphic(RootedGraph(a), RootedGraph(b)); }

inline BigInt automorphism_count(const RootedGraph& rg) { return canonical_search(rg).automorphisms; }
inline BigInt automorphism_count(const Graph& g) { return automorphism_count(RootedGraph(g)); }

// Relabels the graph into canonical position order.
inline RootedGraph canonical_relabel(const RootedGraph& rg) {
  CanonicalResult r = canonical_search(rg);
  std::vector<int> perm(rg.graph.vertex_count());
  for (std::size_t p = 0; p < r.order.size(); ++p) perm[r.order[p]] = static_cast<int>(p);
  return permuted(rg, perm);
}

}  // namespace homexpr

#endif  // HOMEXPR_CANONICAL_HPP
