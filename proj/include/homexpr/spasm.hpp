#ifndef HOMEXPR_SPASM_HPP
#define HOMEXPR_SPASM_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "homexpr/bigint.hpp"
#include "homexpr/canonical.hpp"
#include "homexpr/errors.hpp"
#include "homexpr/family.hpp"
#include "homexpr/graph.hpp"
#include "homexpr/homcount.hpp"
#include "homexpr/limits.hpp"

namespace homexpr {

// Quotient of f by a vertex partition given as class ids 0..k-1.
inline RootedGraph quotient(const RootedGraph& f, const std::vector<int>& cls, int k) {
  Graph q(k);
  for (int v = 0; v < f.graph.vertex_count(); ++v) q.set_label(cls[v], f.graph.label(v));
  for (auto [a, b] : f.graph.edges()) {
    if (cls[a] == cls[b]) throw ValidationError("partition class contains an edge");
    if (!q.has_edge(cls[a], cls[b])) q.add_edge(cls[a], cls[b]);
  }
  std::vector<int> roots;
  for (int r : f.roots) roots.push_back(cls[r]);
  return RootedGraph(std::move(q), std::move(roots));
}

// Quotient merging the two non-adjacent vertices u and v.
inline RootedGraph merge_pair(const RootedGraph& f, int u, int v) {
  if (u > v) std::swap(u, v);
  std::vector<int> cls(f.graph.vertex_count());
  for (int x = 0, next = 0; x < f.graph.vertex_count(); ++x) cls[x] = x == v ? cls[u] : next++;
  return quotient(f, cls, f.graph.vertex_count() - 1);
}

struct SpasmImage {
  RootedGraph image;      // canonically relabeled
  BigInt partitions = 0;  // number of vertex partitions of the pattern with this quotient
};

namespace detail {

inline void check_spasm_size(const RootedGraph& f, const Limits& limits) {
  if (f.graph.vertex_count() > limits.spasm_vertices) {
    throw ResourceError("spasm enumeration limited to " + std::to_string(limits.spasm_vertices) + " vertices, got " +
                        std::to_string(f.graph.vertex_count()));
  }
}

// All quotients by partitions into independent, label-uniform classes, grouped
// by isomorphism class. Partitions are restricted-growth strings.
inline std::vector<SpasmImage> spasm_with_multiplicity(const RootedGraph& f, const Limits& limits) {
  f.validate();
  check_spasm_size(f, limits);
  const Graph& g = f.graph;
  int n = g.vertex_count();
  std::map<std::string, SpasmImage> found;
  std::vector<int> cls(n, -1);
  std::vector<std::vector<int>> members;
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      RootedGraph q = quotient(f, cls, static_cast<int>(members.size()));
      CanonicalResult r = canonical_search(q);
      auto it = found.find(r.form.bytes);
      if (it == found.end()) {
        std::vector<int> perm(q.graph.vertex_count());
        for (std::size_t p = 0; p < r.order.size(); ++p) perm[r.order[p]] = static_cast<int>(p);
        it = found.emplace(r.form.bytes, SpasmImage{permuted(q, perm), 0}).first;
      }
      it->second.partitions += 1;
      return;
    }
    for (std::size_t c = 0; c < members.size(); ++c) {
      bool ok = g.label(members[c][0]) == g.label(v);
      for (int u : members[c])
        if (!ok || g.has_edge(u, v)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cls[v] = static_cast<int>(c);
      members[c].push_back(v);
      self(self, v + 1);
      members[c].pop_back();
    }
    cls[v] = static_cast<int>(members.size());
    members.push_back({v});
    self(self, v + 1);
    members.pop_back();
  };
  rec(rec, 0);

  std::vector<std::pair<std::string, SpasmImage>> all(found.begin(), found.end());
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    const Graph& x = a.second.image.graph;
    const Graph& y = b.second.image.graph;
    if (x.vertex_count() != y.vertex_count()) return x.vertex_count() > y.vertex_count();
    if (x.edge_count() != y.edge_count()) return x.edge_count() > y.edge_count();
    return a.first < b.first;
  });
  std::vector<SpasmImage> out;
  for (auto& item : all) out.push_back(std::move(item.second));
  return out;
}

}  // namespace detail

// One representative per isomorphism class of homomorphic images, ordered by
// decreasing vertex count, then decreasing edge count.
inline std::vector<RootedGraph> enumerate_spasm(const RootedGraph& f, const Limits& limits = default_limits()) {
  std::vector<RootedGraph> out;
  for (auto& s : detail::spasm_with_multiplicity(f, limits)) out.push_back(std::move(s.image));
  return out;
}

// Vertex- and edge-surjective homomorphisms: every one factors uniquely as a
// quotient map followed by an isomorphism, so the count is
// (#partitions with quotient isomorphic to image) * aut(image).
inline BigInt surjective_hom_count(const RootedGraph& f, const RootedGraph& image,
                                   const Limits& limits = default_limits()) {
  if (f.roots.size() != image.roots.size()) throw DomainError("root counts differ");
  if (image.graph.vertex_count() > f.graph.vertex_count() || image.graph.edge_count() > f.graph.edge_count()) return 0;
  CanonicalForm target = canonical_form(image);
  for (const auto& s : detail::spasm_with_multiplicity(f, limits))
    if (canonical_form(s.image) == target) return s.partitions * automorphism_count(image);
  return 0;
}

struct SpasmEntry {
  RootedGraph image;
  Rational alpha;
};

struct SpasmBasis {
  RootedGraph pattern;
  std::vector<SpasmEntry> entries;

  Rational evaluate(const RootedGraph& target) const {
    Rational sum = 0;
    for (const auto& e : entries) sum += e.alpha * Rational(hom_count(e.image, target));
    return sum;
  }
};

namespace detail {

inline RootedGraph random_target(const RootedGraph& f, std::mt19937_64& rng, int max_vertices) {
  std::vector<int> labels = f.graph.labels();
  if (labels.empty()) labels.push_back(0);
  int n = std::max<int>(1, 1 + static_cast<int>(rng() % static_cast<unsigned>(max_vertices)));
  n = std::max<int>(n, static_cast<int>(f.roots.size()));
  Graph g(n);
  int density = 35 + static_cast<int>(rng() % 50);
  for (int v = 0; v < n; ++v) g.set_label(v, labels[rng() % labels.size()]);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (static_cast<int>(rng() % 100) < density) g.add_edge(a, b);
  std::vector<int> roots;
  for (std::size_t i = 0; i < f.roots.size(); ++i) {
    // Keep coincident pattern roots coincident so the target is not trivially dead.
    if (i == 1 && f.roots[1] == f.roots[0] && rng() % 4 != 0) roots.push_back(roots[0]);
    else roots.push_back(static_cast<int>(rng() % static_cast<unsigned>(n)));
  }
  return RootedGraph(std::move(g), std::move(roots));
}

}  // namespace detail

// Exact coefficients with sub(f, G) = sum alpha * hom(image, G). Solves the
// triangular system hom(F_i, G) = sum_j surj(F_i, F_j) sub(F_j, G) over the
// spasm, smallest images first, then checks the result on random targets.
inline SpasmBasis spasm_coefficients(const RootedGraph& f, const Limits& limits = default_limits(),
                                     int checks = 20) {
  std::vector<SpasmImage> spasm = detail::spasm_with_multiplicity(f, limits);
  std::size_t k = spasm.size();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < k; ++i) index[canonical_form(spasm[i].image).bytes] = i;

  // sub_coef[i][j]: coefficient of hom(F_j, .) in sub(F_i, .). Spasm is ordered
  // by decreasing size, so walk it backwards.
  std::vector<std::vector<Rational>> sub_coef(k, std::vector<Rational>(k, 0));
  for (std::size_t ii = k; ii-- > 0;) {
    std::vector<SpasmImage> inner = detail::spasm_with_multiplicity(spasm[ii].image, limits);
    std::vector<Rational> row(k, 0);
    row[ii] = 1;
    Rational diag = 0;
    for (const SpasmImage& s : inner) {
      auto it = index.find(canonical_form(s.image).bytes);
      if (it == index.end()) throw ConsistencyError("spasm is not closed under taking images");
      std::size_t j = it->second;
      Rational surj(s.partitions * automorphism_count(s.image));
      if (j == ii) {
        diag = surj;
        continue;
      }
      if (j < ii) throw ConsistencyError("spasm ordering is not triangular");
      for (std::size_t t = 0; t < k; ++t)
        if (sub_coef[j][t] != 0) row[t] -= surj * sub_coef[j][t];
    }
    if (diag == 0) throw ConsistencyError("zero diagonal in spasm system");
    for (auto& x : row) x /= diag;
    sub_coef[ii] = std::move(row);
  }

  SpasmBasis basis;
  basis.pattern = f;
  for (std::size_t j = 0; j < k; ++j) {
    if (sub_coef[0][j] == 0) throw ConsistencyError("vanishing spasm coefficient");
    basis.entries.push_back({spasm[j].image, sub_coef[0][j]});
  }

  std::mt19937_64 rng(0x5eed + static_cast<unsigned>(f.graph.vertex_count() * 31 + f.graph.edge_count()));
  for (int c = 0; c < checks; ++c) {
    RootedGraph target = detail::random_target(f, rng, 8);
    if (basis.evaluate(target) != Rational(sub_count(f, target))) {
      throw ConsistencyError("spasm coefficients disagree with direct subgraph count");
    }
  }
  return basis;
}

struct Countability {
  bool countable = true;
  std::optional<RootedGraph> witness;  // smallest image outside the family
};

// Memoized decision of "every spasm image lies in the family". Images of f are
// f itself plus the images of each single merge of two non-adjacent vertices,
// so the closure is explored through pair merges keyed by canonical form.
class CountabilityOracle {
 public:
  CountabilityOracle(FamilyId fam, Level level, const Limits& limits = default_limits())
      : fam_(fam), level_(level), limits_(limits) {}

  bool member(const RootedGraph& rg) {
    std::string key = canonical_form(rg).bytes;
    auto it = member_.find(key);
    if (it != member_.end()) return it->second;
    bool m = in_family_rooted(rg, fam_, level_, limits_);
    member_.emplace(std::move(key), m);
    return m;
  }

  Countability decide(const RootedGraph& f) {
    detail::check_spasm_size(f, limits_);
    RootedGraph canon = canonical_relabel(f);
    return solve(canon, canonical_form(canon).bytes);
  }

 private:
  static bool smaller(const RootedGraph& a, const std::string& ka, const RootedGraph& b, const std::string& kb) {
    if (a.graph.vertex_count() != b.graph.vertex_count()) return a.graph.vertex_count() < b.graph.vertex_count();
    if (a.graph.edge_count() != b.graph.edge_count()) return a.graph.edge_count() < b.graph.edge_count();
    return ka < kb;
  }

  Countability solve(const RootedGraph& f, const std::string& key) {
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Countability best;
    std::string best_key;
    if (!member(f)) {
      best.countable = false;
      best.witness = f;
      best_key = key;
    }
    const Graph& g = f.graph;
    for (int u = 0; u < g.vertex_count(); ++u)
      for (int v = u + 1; v < g.vertex_count(); ++v) {
        if (g.has_edge(u, v) || g.label(u) != g.label(v)) continue;
        RootedGraph q = canonical_relabel(merge_pair(f, u, v));
        std::string qk = canonical_form(q).bytes;
        Countability sub = solve(q, qk);
        if (sub.countable) continue;
        std::string wk = canonical_form(*sub.witness).bytes;
        if (best.countable || smaller(*sub.witness, wk, *best.witness, best_key)) {
          best = sub;
          best_key = wk;
        }
      }
    memo_.emplace(key, best);
    return best;
  }

  FamilyId fam_;
  Level level_;
  Limits limits_;
  std::unordered_map<std::string, bool> member_;
  std::unordered_map<std::string, Countability> memo_;
};

inline Countability subgraph_countable(const RootedGraph& f, const FamilyId& fam, Level level,
                                       const Limits& limits = default_limits()) {
  if (static_cast<int>(f.roots.size()) != roots_for(level))
    throw DomainError(to_string(level) + " level needs " + std::to_string(roots_for(level)) + " roots");
  CountabilityOracle oracle(fam, level, limits);
  return oracle.decide(f);
}

}  // namespace homexpr

#endif  // HOMEXPR_SPASM_HPP
