#ifndef HOMEXPR_TABLES_HPP
#define HOMEXPR_TABLES_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "homexpr/canonical.hpp"
#include "homexpr/enumerate.hpp"
#include "homexpr/family.hpp"
#include "homexpr/furer.hpp"
#include "homexpr/graph_io.hpp"
#include "homexpr/spasm.hpp"

namespace homexpr {

struct TableBounds {
  int max_n = 6;  // size classes n = 2..max_n
  int max_m = 8;  // size classes m = 1..max_m
  int jobs = 1;
};

struct CountRow {
  std::string label;
  std::vector<long long> counts;
};

struct CountTable {
  Level level = Level::Graph;
  std::vector<std::string> columns;
  std::vector<CountRow> rows;  // one per family, then "All"
};

namespace detail {

// Runs tasks on up to `jobs` threads; the first exception is rethrown.
inline void run_parallel(std::vector<std::function<void()>>& tasks, int jobs) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (jobs == 1) {
    for (auto& t : tasks) t();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < tasks.size();) {
        try {
          tasks[i]();
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct SizeClass {
  std::string column;
  std::vector<RootedGraph> items;
};

inline std::vector<SizeClass> size_classes(Level level, const TableBounds& b, const Limits& limits) {
  std::vector<SizeClass> out;
  auto add = [&](std::string column, const std::vector<Graph>& graphs) {
    SizeClass sc{std::move(column), {}};
    for (const Graph& g : graphs) {
      if (level == Level::Graph) sc.items.emplace_back(g);
      else
        for (auto& r : enumerate_rooted(g, roots_for(level))) sc.items.push_back(std::move(r));
    }
    out.push_back(std::move(sc));
  };
  for (int n = 2; n <= b.max_n; ++n) add("n" + std::to_string(n), connected_graphs_with_vertices(n, limits));
  for (int m = 1; m <= b.max_m; ++m) add("m" + std::to_string(m), connected_graphs_with_edges(m, limits));
  return out;
}

inline std::vector<FamilyId> families_at(Level level) {
  std::vector<FamilyId> out;
  for (const FamilyId& f : base_families())
    if (!(level == Level::Edge && f.kind == FamilyKind::MP)) out.push_back(f);
  return out;
}

// Counts, per level and family, the items satisfying `test`; each (level, family)
// is an independent task with its own state.
template <class MakeTest>
std::vector<CountTable> count_tables(const TableBounds& b, const Limits& limits, MakeTest make_test) {
  std::vector<CountTable> tables;
  std::vector<std::vector<SizeClass>> classes;
  std::vector<std::function<void()>> tasks;
  for (Level level : {Level::Graph, Level::Node, Level::Edge}) {
    classes.push_back(size_classes(level, b, limits));
    CountTable t;
    t.level = level;
    for (const auto& sc : classes.back()) t.columns.push_back(sc.column);
    for (const FamilyId& f : families_at(level)) t.rows.push_back({to_string(f), std::vector<long long>(t.columns.size(), 0)});
    CountRow all{"All", {}};
    for (const auto& sc : classes.back()) all.counts.push_back(static_cast<long long>(sc.items.size()));
    t.rows.push_back(std::move(all));
    tables.push_back(std::move(t));
  }
  for (std::size_t li = 0; li < tables.size(); ++li) {
    std::vector<FamilyId> fams = families_at(tables[li].level);
    for (std::size_t fi = 0; fi < fams.size(); ++fi)
      tasks.push_back([&, li, fi, fam = fams[fi]] {
        auto test = make_test(fam, tables[li].level);
        for (std::size_t c = 0; c < classes[li].size(); ++c) {
          long long count = 0;
          for (const RootedGraph& rg : classes[li][c].items) count += test(rg) ? 1 : 0;
          tables[li].rows[fi].counts[c] = count;
        }
      });
  }
  run_parallel(tasks, b.jobs);
  return tables;
}

}  // namespace detail

// Number of (rooted) connected graphs per size class whose homomorphism counts
// each model determines.
inline std::vector<CountTable> hom_count_table(const TableBounds& b = {}, const Limits& limits = default_limits()) {
  return detail::count_tables(b, limits, [&limits](const FamilyId& fam, Level level) {
    return [fam, level, &limits](const RootedGraph& rg) { return in_family_rooted(rg, fam, level, limits); };
  });
}

// Number of (rooted) connected graphs per size class each model can subgraph-count.
inline std::vector<CountTable> sub_count_table(const TableBounds& b = {}, const Limits& limits = default_limits()) {
  return detail::count_tables(b, limits, [&limits](const FamilyId& fam, Level level) {
    auto oracle = std::make_shared<CountabilityOracle>(fam, level, limits);
    return [oracle](const RootedGraph& rg) { return oracle->decide(rg).countable; };
  });
}

inline std::string tables_to_csv(const std::vector<CountTable>& tables) {
  std::ostringstream out;
  if (tables.empty()) return {};
  out << "level,model";
  for (const auto& c : tables.front().columns) out << "," << c;
  out << "\n";
  for (const auto& t : tables)
    for (const auto& row : t.rows) {
      out << to_string(t.level) << "," << row.label;
      for (long long v : row.counts) out << "," << v;
      out << "\n";
    }
  return out.str();
}

struct CyclePathCell {
  std::vector<int> countable;  // n values in range that are countable
  int lo = 0, hi = 0;

  // "n<=k", "none", or an explicit list when the set is not a prefix of the range.
  std::string summary() const {
    if (countable.empty()) return "none";
    bool prefix = countable.front() == lo;
    for (std::size_t i = 1; i < countable.size(); ++i)
      if (countable[i] != countable[i - 1] + 1) prefix = false;
    if (prefix) return "n<=" + std::to_string(countable.back());
    std::string s;
    for (int n : countable) s += (s.empty() ? "n in {" : ",") + std::to_string(n);
    return s + "}";
  }
};

struct CyclePathRow {
  FamilyId family;
  // Cycle C_n, C_n^u, C_n^uv, then path P_n, P_n^w, P_n^wx.
  CyclePathCell cells[6];
};

inline const std::vector<std::string>& cycle_path_columns() {
  static const std::vector<std::string> cols{"C_n", "C_n^u", "C_n^uv", "P_n", "P_n^w", "P_n^wx"};
  return cols;
}

// C_n rooted at u / at an edge uv; P_n rooted at an endpoint w / at (w, x) with x its neighbour.
inline std::vector<CyclePathRow> cycle_path_table(int max_n, const Limits& limits = default_limits(), int jobs = 1) {
  if (max_n < 3) throw ValidationError("cycle/path table needs max_n >= 3");
  if (max_n > limits.spasm_vertices)
    throw ResourceError("cycle/path table limited to " + std::to_string(limits.spasm_vertices) + " vertices");
  std::vector<CyclePathRow> rows;
  for (const FamilyId& f : base_families()) rows.push_back({f, {}});
  std::vector<std::function<void()>> tasks;
  for (std::size_t ri = 0; ri < rows.size(); ++ri)
    for (int col = 0; col < 6; ++col)
      tasks.push_back([&, ri, col] {
        CyclePathCell& cell = rows[ri].cells[col];
        bool cycle = col < 3;
        int roots = col % 3;
        Level level = roots == 0 ? Level::Graph : roots == 1 ? Level::Node : Level::Edge;
        cell.lo = cycle ? 3 : 2;
        cell.hi = max_n;
        CountabilityOracle oracle(rows[ri].family, level, limits);
        for (int n = cell.lo; n <= max_n; ++n) {
          Graph g = cycle ? cycle_graph(n) : path_graph(n);
          std::vector<int> r;
          if (roots >= 1) r.push_back(0);
          if (roots == 2) r.push_back(1);
          if (oracle.decide(RootedGraph(g, r)).countable) cell.countable.push_back(n);
        }
      });
  detail::run_parallel(tasks, jobs);
  return rows;
}

struct ClassificationEntry {
  FamilyId family;
  bool hom_member = false;
  bool sub_countable = false;
  std::optional<RootedGraph> witness;
};

struct ClassificationRow {
  Level level = Level::Graph;
  RootedGraph pattern;
  std::vector<ClassificationEntry> entries;
};

// Every connected graph with n <= max_n vertices or m <= max_m edges, at every
// level and rooting, ordered by level, then (n, m, canonical form).
inline std::vector<ClassificationRow> full_classification(const TableBounds& b = {},
                                                          const Limits& limits = default_limits()) {
  detail::CanonicalCollector graphs;
  for (int n = 1; n <= b.max_n; ++n)
    for (auto& g : connected_graphs_with_vertices(n, limits)) graphs.offer(RootedGraph(g));
  for (int m = 1; m <= b.max_m; ++m)
    for (auto& g : connected_graphs_with_edges(m, limits)) graphs.offer(RootedGraph(g));
  std::vector<Graph> universe = detail::strip_roots(graphs.take());

  std::vector<ClassificationRow> rows;
  std::vector<std::pair<std::size_t, std::size_t>> level_ranges;
  for (Level level : {Level::Graph, Level::Node, Level::Edge}) {
    detail::CanonicalCollector items;
    for (const Graph& g : universe) {
      if (level == Level::Graph) items.offer(RootedGraph(g));
      else if (g.vertex_count() >= roots_for(level))
        for (auto& r : enumerate_rooted(g, roots_for(level))) items.offer(r);
    }
    std::size_t start = rows.size();
    for (auto& rg : items.take()) rows.push_back({level, std::move(rg), {}});
    level_ranges.emplace_back(start, rows.size());
  }
  for (auto& row : rows)
    for (const FamilyId& f : detail::families_at(row.level)) row.entries.push_back({f, false, false, std::nullopt});

  std::vector<std::function<void()>> tasks;
  for (std::size_t li = 0; li < level_ranges.size(); ++li) {
    Level level = li == 0 ? Level::Graph : li == 1 ? Level::Node : Level::Edge;
    std::vector<FamilyId> fams = detail::families_at(level);
    for (std::size_t fi = 0; fi < fams.size(); ++fi)
      tasks.push_back([&, li, fi, level, fam = fams[fi]] {
        CountabilityOracle oracle(fam, level, limits);
        for (std::size_t i = level_ranges[li].first; i < level_ranges[li].second; ++i) {
          ClassificationEntry& e = rows[i].entries[fi];
          e.hom_member = oracle.member(rows[i].pattern);
          Countability c = oracle.decide(rows[i].pattern);
          e.sub_countable = c.countable;
          e.witness = c.witness;
        }
      });
  }
  detail::run_parallel(tasks, b.jobs);
  return rows;
}

struct SpotCheck {
  int checked = 0;
  int passed = 0;
};

// Samples rows with sub_countable = false and checks that the witness yields a
// verified counterexample pair for its family.
inline SpotCheck spot_check_witnesses(const std::vector<ClassificationRow>& rows, int samples, std::uint64_t seed,
                                      const Limits& limits = default_limits()) {
  std::vector<std::pair<std::size_t, std::size_t>> failing;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].entries.size(); ++j)
      if (!rows[i].entries[j].sub_countable) failing.emplace_back(i, j);
  std::mt19937_64 rng(seed);
  std::shuffle(failing.begin(), failing.end(), rng);
  SpotCheck out;
  for (std::size_t k = 0; k < failing.size() && out.checked < samples; ++k) {
    const ClassificationRow& row = rows[failing[k].first];
    const ClassificationEntry& e = row.entries[failing[k].second];
    ++out.checked;
    CounterexamplePair pair = build_counterexample(*e.witness, e.family, row.level, limits);
    if (verify_counterexample(*e.witness, e.family, row.level, pair).verdict) ++out.passed;
  }
  return out;
}

}  // namespace homexpr

#endif  // HOMEXPR_TABLES_HPP
