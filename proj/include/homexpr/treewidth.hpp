#ifndef HOMEXPR_TREEWIDTH_HPP
#define HOMEXPR_TREEWIDTH_HPP

#include <bit>
#include <cstdint>
#include <vector>

#include "homexpr/graph.hpp"
#include "homexpr/limits.hpp"

namespace homexpr {

// Exact treewidth by dynamic programming over elimination prefixes:
// TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where Q(S, v) is
// the set of vertices outside S + v reachable from v through S.
// Edgeless graphs get 0.
inline int treewidth(const Graph& g, const Limits& limits = default_limits()) {
  int n = g.vertex_count();
  if (n > limits.treewidth_vertices || n > 26) {
    throw ResourceError("treewidth limited to " + std::to_string(limits.treewidth_vertices) + " vertices");
  }
  if (g.edge_count() == 0) return 0;
  std::vector<std::uint32_t> adj(n, 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  auto q_size = [&](std::uint32_t s, int v) {
    std::uint32_t seen = 1u << v, frontier = 1u << v, out = 0;
    while (frontier) {
      int x = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint32_t nb = adj[x] & ~seen;
      seen |= nb;
      out |= nb & ~s;
      frontier |= nb & s;
    }
    return std::popcount(out);
  };
  std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<std::int8_t> tw(static_cast<std::size_t>(full) + 1, 0);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
    int best = n;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      std::uint32_t prev = s & ~(1u << v);
      int value = std::max<int>(tw[prev], q_size(prev, v));
      if (value < best) best = value;
    }
    tw[s] = static_cast<std::int8_t>(best);
  }
  return tw[full];
}

}  // namespace homexpr

#endif  // HOMEXPR_TREEWIDTH_HPP
