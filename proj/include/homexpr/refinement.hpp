#ifndef HOMEXPR_REFINEMENT_HPP
#define HOMEXPR_REFINEMENT_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "homexpr/errors.hpp"
#include "homexpr/graph.hpp"

namespace homexpr {

enum class ModelId { MP, Sub, L, LF, F };

inline std::string to_string(ModelId m) {
  switch (m) {
    case ModelId::MP: return "MP";
    case ModelId::Sub: return "Sub";
    case ModelId::L: return "L";
    case ModelId::LF: return "LF";
    case ModelId::F: return "F";
  }
  return "?";
}

inline ModelId parse_model(const std::string& s) {
  if (s == "MP") return ModelId::MP;
  if (s == "Sub") return ModelId::Sub;
  if (s == "L") return ModelId::L;
  if (s == "LF") return ModelId::LF;
  if (s == "F") return ModelId::F;
  throw ValidationError("unknown model '" + s + "'");
}

struct ColorAssignment {
  ModelId model = ModelId::MP;
  std::uint64_t session_id = 0;
  int rounds = 0;
  std::vector<int> sizes;
  // Per graph: vertex colors (MP) or pair colors indexed u * n + v.
  std::vector<std::vector<int>> unit_colors;
  // Per graph: node colors; for pair models the interned multiset of chi(u, .).
  std::vector<std::vector<int>> node_colors;

  bool pair_level() const { return model != ModelId::MP; }
  int node_color(std::size_t gi, int u) const { return node_colors[gi][u]; }
  int pair_color(std::size_t gi, int u, int v) const {
    if (!pair_level()) throw DomainError("MP has no pair colors");
    return unit_colors[gi][static_cast<std::size_t>(u) * sizes[gi] + v];
  }
  // Sorted multiset of node colors.
  std::vector<int> graph_repr(std::size_t gi) const {
    std::vector<int> out = node_colors[gi];
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
    for (int x : v) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

class Interner {
 public:
  int operator()(const std::vector<int>& sig) {
    auto [it, inserted] = ids_.try_emplace(sig, static_cast<int>(ids_.size()));
    return it->second;
  }
  std::size_t size() const { return ids_.size(); }

 private:
  std::unordered_map<std::vector<int>, int, VectorHash> ids_;
};

inline std::uint64_t next_session_id() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

inline void pair_signature(ModelId model, const Graph& g, const std::vector<int>& c, int u, int v,
                           std::vector<int>& sig, std::vector<std::pair<int, int>>& pairs,
                           std::vector<int>& scratch) {
  int n = g.vertex_count();
  auto at = [&](int a, int b) { return c[static_cast<std::size_t>(a) * n + b]; };
  sig.clear();
  sig.push_back(at(u, v));
  switch (model) {
    case ModelId::Sub: {
      scratch.clear();
      for (int w : g.neighbors(v)) scratch.push_back(at(u, w));
      std::sort(scratch.begin(), scratch.end());
      sig.insert(sig.end(), scratch.begin(), scratch.end());
      break;
    }
    case ModelId::L: {
      scratch.clear();
      for (int w : g.neighbors(v)) scratch.push_back(at(u, w));
      std::sort(scratch.begin(), scratch.end());
      sig.push_back(static_cast<int>(scratch.size()));
      sig.insert(sig.end(), scratch.begin(), scratch.end());
      scratch.clear();
      for (int w : g.neighbors(u)) scratch.push_back(at(w, v));
      std::sort(scratch.begin(), scratch.end());
      sig.insert(sig.end(), scratch.begin(), scratch.end());
      break;
    }
    case ModelId::LF: {
      pairs.clear();
      const auto& nu = g.neighbors(u);
      const auto& nv = g.neighbors(v);
      std::size_t i = 0, j = 0;
      while (i < nu.size() || j < nv.size()) {
        int w;
        if (j == nv.size() || (i < nu.size() && nu[i] < nv[j])) w = nu[i++];
        else if (i == nu.size() || nv[j] < nu[i]) w = nv[j++];
        else {
          w = nu[i];
          ++i;
          ++j;
        }
        pairs.emplace_back(at(w, v), at(u, w));
      }
      std::sort(pairs.begin(), pairs.end());
      for (auto [a, b] : pairs) {
        sig.push_back(a);
        sig.push_back(b);
      }
      break;
    }
    case ModelId::F: {
      pairs.clear();
      for (int w = 0; w < n; ++w) pairs.emplace_back(at(w, v), at(u, w));
      std::sort(pairs.begin(), pairs.end());
      for (auto [a, b] : pairs) {
        sig.push_back(a);
        sig.push_back(b);
      }
      break;
    }
    case ModelId::MP:
      break;
  }
}

}  // namespace detail

// Refines all graphs jointly to stable colors; ids are comparable across graphs.
inline ColorAssignment refine(ModelId model, const std::vector<const Graph*>& graphs) {
  if (graphs.empty()) throw DomainError("refine needs at least one graph");
  ColorAssignment out;
  out.model = model;
  out.session_id = detail::next_session_id();
  std::size_t total_units = 0;
  for (const Graph* g : graphs) {
    int n = g->vertex_count();
    out.sizes.push_back(n);
    total_units += model == ModelId::MP ? n : static_cast<std::size_t>(n) * n;
  }

  std::vector<std::vector<int>>& colors = out.unit_colors;
  colors.resize(graphs.size());
  std::size_t distinct = 0;
  {
    detail::Interner intern;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      const Graph& g = *graphs[gi];
      int n = g.vertex_count();
      if (model == ModelId::MP) {
        colors[gi].resize(n);
        for (int v = 0; v < n; ++v) colors[gi][v] = intern({g.label(v)});
      } else {
        colors[gi].resize(static_cast<std::size_t>(n) * n);
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v) {
            std::vector<int> type{g.label(u), g.label(v), u == v ? 1 : 0, g.has_edge(u, v) ? 1 : 0};
            if (model == ModelId::Sub) type = {g.label(v), u == v ? 1 : 0};
            colors[gi][static_cast<std::size_t>(u) * n + v] = intern(type);
          }
      }
    }
    distinct = intern.size();
  }

  std::vector<int> sig, scratch;
  std::vector<std::pair<int, int>> pairs;
  for (;;) {
    detail::Interner intern;
    std::vector<std::vector<int>> next(graphs.size());
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      const Graph& g = *graphs[gi];
      int n = g.vertex_count();
      const std::vector<int>& c = colors[gi];
      next[gi].resize(c.size());
      if (model == ModelId::MP) {
        for (int v = 0; v < n; ++v) {
          sig.clear();
          sig.push_back(c[v]);
          scratch.clear();
          for (int w : g.neighbors(v)) scratch.push_back(c[w]);
          std::sort(scratch.begin(), scratch.end());
          sig.insert(sig.end(), scratch.begin(), scratch.end());
          next[gi][v] = intern(sig);
        }
      } else {
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v) {
            detail::pair_signature(model, g, c, u, v, sig, pairs, scratch);
            next[gi][static_cast<std::size_t>(u) * n + v] = intern(sig);
          }
      }
    }
    std::size_t now = intern.size();
    if (now <= distinct) break;
    colors = std::move(next);
    distinct = now;
    ++out.rounds;
    if (static_cast<std::size_t>(out.rounds) > total_units) throw ConsistencyError("refinement failed to stabilize");
  }

  out.node_colors.resize(graphs.size());
  if (model == ModelId::MP) {
    out.node_colors = colors;
  } else {
    detail::Interner intern;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      int n = out.sizes[gi];
      out.node_colors[gi].resize(n);
      for (int u = 0; u < n; ++u) {
        std::vector<int> row(colors[gi].begin() + static_cast<std::ptrdiff_t>(u) * n,
                             colors[gi].begin() + static_cast<std::ptrdiff_t>(u + 1) * n);
        std::sort(row.begin(), row.end());
        out.node_colors[gi][u] = intern(row);
      }
    }
  }
  return out;
}

inline ColorAssignment refine(ModelId model, const std::vector<Graph>& graphs) {
  std::vector<const Graph*> ptrs;
  for (const Graph& g : graphs) ptrs.push_back(&g);
  return refine(model, ptrs);
}

inline bool graph_repr_equal(ModelId model, const Graph& g, const Graph& h) {
  if (g.vertex_count() != h.vertex_count()) return false;
  ColorAssignment c = refine(model, std::vector<const Graph*>{&g, &h});
  return c.graph_repr(0) == c.graph_repr(1);
}

inline std::vector<int> node_repr(ModelId model, const Graph& g) {
  return refine(model, std::vector<const Graph*>{&g}).node_colors[0];
}

inline std::vector<int> pair_repr(ModelId model, const Graph& g) {
  if (model == ModelId::MP) throw DomainError("MP has no pair-level representation");
  return refine(model, std::vector<const Graph*>{&g}).unit_colors[0];
}

inline bool node_equal(ModelId model, const Graph& g, int u, const Graph& h, int v) {
  if (!is_connected(g) || !is_connected(h)) throw DomainError("node-level comparison needs connected graphs");
  if (u < 0 || u >= g.vertex_count() || v < 0 || v >= h.vertex_count()) throw ValidationError("vertex out of range");
  ColorAssignment c = refine(model, std::vector<const Graph*>{&g, &h});
  return c.node_color(0, u) == c.node_color(1, v);
}

inline bool pair_equal(ModelId model, const Graph& g, std::pair<int, int> uv, const Graph& h,
                       std::pair<int, int> xy) {
  if (model == ModelId::MP) throw DomainError("MP does not support pair-level comparison");
  if (!is_connected(g) || !is_connected(h)) throw DomainError("pair-level comparison needs connected graphs");
  for (int a : {uv.first, uv.second})
    if (a < 0 || a >= g.vertex_count()) throw ValidationError("vertex out of range");
  for (int a : {xy.first, xy.second})
    if (a < 0 || a >= h.vertex_count()) throw ValidationError("vertex out of range");
  ColorAssignment c = refine(model, std::vector<const Graph*>{&g, &h});
  return c.pair_color(0, uv.first, uv.second) == c.pair_color(1, xy.first, xy.second);
}

}  // namespace homexpr

#endif  // HOMEXPR_REFINEMENT_HPP
