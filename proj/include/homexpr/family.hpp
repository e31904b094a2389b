#ifndef HOMEXPR_FAMILY_HPP
#define HOMEXPR_FAMILY_HPP

#include <optional>
#include <string>
#include <vector>

#include "homexpr/errors.hpp"
#include "homexpr/graph.hpp"
#include "homexpr/limits.hpp"
#include "homexpr/ned.hpp"
#include "homexpr/refinement.hpp"
#include "homexpr/treedec.hpp"
#include "homexpr/treewidth.hpp"

namespace homexpr {

enum class FamilyKind { MP, Sub, L, LF, F, SubK, FK };

struct FamilyId {
  FamilyKind kind = FamilyKind::MP;
  int k = 0;  // only for SubK and FK

  friend bool operator==(const FamilyId&, const FamilyId&) = default;
};

inline const std::vector<FamilyId>& base_families() {
  static const std::vector<FamilyId> all{{FamilyKind::MP}, {FamilyKind::Sub}, {FamilyKind::L}, {FamilyKind::LF},
                                         {FamilyKind::F}};
  return all;
}

inline std::string to_string(const FamilyId& f) {
  switch (f.kind) {
    case FamilyKind::MP: return "MP";
    case FamilyKind::Sub: return "Sub";
    case FamilyKind::L: return "L";
    case FamilyKind::LF: return "LF";
    case FamilyKind::F: return "F";
    case FamilyKind::SubK: return "Sub(" + std::to_string(f.k) + ")";
    case FamilyKind::FK: return "F(" + std::to_string(f.k) + ")";
  }
  return "?";
}

inline FamilyId parse_family(const std::string& s) {
  if (s == "MP") return {FamilyKind::MP};
  if (s == "Sub") return {FamilyKind::Sub};
  if (s == "L") return {FamilyKind::L};
  if (s == "LF") return {FamilyKind::LF};
  if (s == "F") return {FamilyKind::F};
  auto param = [&](const std::string& prefix) -> std::optional<int> {
    if (s.size() < prefix.size() + 3 || s.compare(0, prefix.size() + 1, prefix + "(") != 0 || s.back() != ')')
      return std::nullopt;
    std::string digits = s.substr(prefix.size() + 1, s.size() - prefix.size() - 2);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 4)
      return std::nullopt;
    return std::stoi(digits);
  };
  if (auto k = param("Sub")) return {FamilyKind::SubK, *k};
  if (auto k = param("F")) {
    if (*k < 1) throw ValidationError("F(k) needs k >= 1");
    return {FamilyKind::FK, *k};
  }
  throw ValidationError("unknown family '" + s + "'");
}

// The refinement model whose expressivity a base family describes.
inline ModelId model_of(const FamilyId& f) {
  switch (f.kind) {
    case FamilyKind::MP: return ModelId::MP;
    case FamilyKind::Sub: return ModelId::Sub;
    case FamilyKind::L: return ModelId::L;
    case FamilyKind::LF: return ModelId::LF;
    case FamilyKind::F: return ModelId::F;
    default: throw DomainError("family " + to_string(f) + " has no refinement model");
  }
}

inline TdFamily td_family_of(const FamilyId& f) {
  switch (f.kind) {
    case FamilyKind::Sub: return TdFamily::Sub;
    case FamilyKind::L: return TdFamily::L;
    case FamilyKind::LF: return TdFamily::LF;
    case FamilyKind::F: return TdFamily::F;
    default: throw DomainError("family " + to_string(f) + " has no canonical decomposition search");
  }
}

inline std::optional<NedVariant> ned_variant_of(const FamilyId& f) {
  switch (f.kind) {
    case FamilyKind::Sub: return NedVariant::EndpointShared;
    case FamilyKind::L: return NedVariant::Strong;
    case FamilyKind::LF: return NedVariant::AlmostStrong;
    case FamilyKind::F: return NedVariant::General;
    default: return std::nullopt;
  }
}

enum class Level { Graph, Node, Edge };

inline std::string to_string(Level l) {
  switch (l) {
    case Level::Graph: return "graph";
    case Level::Node: return "node";
    case Level::Edge: return "edge";
  }
  return "?";
}

inline Level parse_level(const std::string& s) {
  if (s == "graph") return Level::Graph;
  if (s == "node") return Level::Node;
  if (s == "edge") return Level::Edge;
  throw ValidationError("unknown level '" + s + "'");
}

inline int roots_for(Level l) { return l == Level::Graph ? 0 : l == Level::Node ? 1 : 2; }

// Smallest vertex set U with |U| <= k whose deletion leaves a forest, searched
// by increasing size.
inline std::optional<std::vector<int>> deletion_witness(const Graph& g, int k,
                                                        const Limits& limits = default_limits()) {
  if (k < 0) throw ValidationError("deletion size must be non-negative");
  if (k > limits.deletion_k) {
    throw ResourceError("deletion size " + std::to_string(k) + " exceeds limit " + std::to_string(limits.deletion_k));
  }
  int n = g.vertex_count();
  std::vector<int> pick;
  std::optional<std::vector<int>> found;
  auto rec = [&](auto&& self, int start, int left) -> bool {
    if (left == 0) {
      if (is_forest(vertex_deleted(g, pick).graph)) {
        found = pick;
        return true;
      }
      return false;
    }
    for (int v = start; v < n; ++v) {
      pick.push_back(v);
      bool ok = self(self, v + 1, left - 1);
      pick.pop_back();
      if (ok) return true;
    }
    return false;
  };
  for (int size = 0; size <= std::min(k, n); ++size)
    if (rec(rec, 0, size)) return found;
  return std::nullopt;
}

namespace detail {

inline std::vector<Graph> edge_components_as_graphs(const Graph& g) {
  std::vector<Graph> out;
  for (const auto& comp : connected_components(g))
    if (comp.size() > 1) out.push_back(induced_subgraph(g, comp).graph);
  return out;
}

}  // namespace detail

// Membership decided by the canonical tree decomposition search, component by component.
inline bool in_family_by_td(const Graph& g, TdFamily f, const Limits& limits = default_limits()) {
  if (f == TdFamily::Sub) {
    if (is_connected(g)) return find_canonical_td(g, f, std::nullopt, limits).has_value();
    return deletion_witness(g, 1, limits).has_value();
  }
  for (const Graph& part : detail::edge_components_as_graphs(g))
    if (!find_canonical_td(part, f, std::nullopt, limits)) return false;
  return true;
}

// Membership decided by the ear decomposition search.
inline bool in_family_by_ned(const Graph& g, NedVariant v, const Limits& limits = default_limits()) {
  return find_ned(g, v, NedConstraints{}, limits).has_value();
}

namespace detail {

// Runs both searches and insists that they agree.
inline bool cross_checked(bool by_ned, bool by_td, const Graph& g, const FamilyId& f) {
  if (by_ned != by_td) {
    throw ConsistencyError("ear and tree decomposition deciders disagree for " + to_string(f) + " on " +
                           std::to_string(g.vertex_count()) + "-vertex graph with " + std::to_string(g.edge_count()) +
                           " edges");
  }
  return by_ned;
}

}  // namespace detail

inline bool in_family(const Graph& g, const FamilyId& f, const Limits& limits = default_limits()) {
  switch (f.kind) {
    case FamilyKind::MP: return is_forest(g);
    case FamilyKind::Sub: return deletion_witness(g, 1, limits).has_value();
    case FamilyKind::SubK: return deletion_witness(g, f.k, limits).has_value();
    case FamilyKind::F:
    case FamilyKind::FK: {
      int bound = f.kind == FamilyKind::F ? 2 : f.k;
      for (const Graph& part : detail::edge_components_as_graphs(g))
        if (treewidth(part, limits) > bound) return false;
      return true;
    }
    case FamilyKind::L:
    case FamilyKind::LF: {
      TdFamily tf = td_family_of(f);
      return detail::cross_checked(in_family_by_ned(g, *ned_variant_of(f), limits), in_family_by_td(g, tf, limits), g, f);
    }
  }
  return false;
}

inline bool in_family_rooted(const RootedGraph& rg, const FamilyId& f, Level level,
                             const Limits& limits = default_limits()) {
  rg.validate();
  if (level == Level::Graph) {
    if (!rg.roots.empty()) throw DomainError("graph level takes no roots");
    return in_family(rg.graph, f, limits);
  }
  const Graph& g = rg.graph;
  if (static_cast<int>(rg.roots.size()) != roots_for(level))
    throw DomainError(to_string(level) + " level needs " + std::to_string(roots_for(level)) + " roots");
  if (!is_connected(g)) throw DomainError("rooted membership needs a connected graph");
  int w = rg.roots[0];
  int x = level == Level::Edge ? rg.roots[1] : w;
  switch (f.kind) {
    case FamilyKind::MP:
      // Edge level: the pair of node colours plus adjacency sees trees whose roots are adjacent or equal.
      if (level == Level::Edge) return is_forest(g) && (w == x || g.has_edge(w, x));
      return is_forest(g);
    case FamilyKind::Sub: return is_forest(vertex_deleted(g, {w}).graph);
    case FamilyKind::L:
    case FamilyKind::LF:
    case FamilyKind::F: {
      bool by_td = find_canonical_td(g, td_family_of(f), std::make_pair(w, x), limits).has_value();
      std::vector<int> ends{w};
      if (x != w) ends.push_back(x);
      bool by_ned = find_ned(g, *ned_variant_of(f), NedConstraints{ends, std::nullopt}, limits).has_value();
      return detail::cross_checked(by_ned, by_td, g, f);
    }
    default: throw DomainError("family " + to_string(f) + " has no rooted variant");
  }
}

}  // namespace homexpr

#endif  // HOMEXPR_FAMILY_HPP
