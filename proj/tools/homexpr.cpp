#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "homexpr/homexpr.hpp"
#include "homexpr/json_io.hpp"

using namespace homexpr;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RootedGraph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  std::string first;
  while (std::getline(in, first)) {
    auto hash = first.find('#');
    if (hash != std::string::npos) first.resize(hash);
    if (first.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  std::istringstream ls(first);
  std::string tag;
  ls >> tag;
  if (tag == "n") return parse_edge_list(text);
  return RootedGraph(parse_graph6(tag));
}

// graph6 string, @file, or a path to a graph6 / edge-list file.
RootedGraph load_graph(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return parse_graph_text(read_file(arg.substr(1)));
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return parse_graph_text(read_file(arg));
  return RootedGraph(parse_graph6(arg));
}

std::vector<int> parse_roots(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw UsageError("bad root list '" + s + "'");
    out.push_back(v);
  }
  return out;
}

// Applies --roots when given, then checks the count against the level.
RootedGraph with_roots(RootedGraph rg, const std::string& roots, std::optional<Level> level) {
  if (!roots.empty()) rg = RootedGraph(rg.graph, parse_roots(roots));
  if (level && static_cast<int>(rg.roots.size()) != roots_for(*level)) {
    throw UsageError(to_string(*level) + " level needs " + std::to_string(roots_for(*level)) + " root(s), got " +
                     std::to_string(rg.roots.size()));
  }
  return rg;
}

Json roots_json(const RootedGraph& rg) { return {{"graph6", to_graph6(rg.graph)}, {"roots", rg.roots}}; }

void emit(const Json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; }

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot write '" + out_path + "'");
  out << text;
}

std::string pretty_count_tables(const std::vector<CountTable>& tables) {
  std::ostringstream out;
  for (const auto& t : tables) {
    out << to_string(t.level) << " level\n" << std::left << std::setw(8) << "model";
    for (const auto& c : t.columns) out << std::right << std::setw(7) << c;
    out << "\n";
    for (const auto& r : t.rows) {
      out << std::left << std::setw(8) << r.label;
      for (long long v : r.counts) out << std::right << std::setw(7) << v;
      out << "\n";
    }
    out << "\n";
  }
  return out.str();
}

std::string pretty_cycle_paths(const std::vector<CyclePathRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "model";
  for (const auto& c : cycle_path_columns()) out << std::setw(10) << c;
  out << "\n";
  for (const auto& r : rows) {
    out << std::setw(8) << to_string(r.family);
    for (const auto& cell : r.cells) out << std::setw(10) << cell.summary();
    out << "\n";
  }
  return out.str();
}

Json certificate(const RootedGraph& rg, const FamilyId& fam, Level level) {
  Json cert = Json::object();
  const Graph& g = rg.graph;
  if (fam.kind == FamilyKind::Sub || fam.kind == FamilyKind::SubK) {
    if (level == Level::Graph) {
      if (auto w = deletion_witness(g, fam.kind == FamilyKind::Sub ? 1 : fam.k)) cert["deleted"] = *w;
    } else {
      cert["deleted"] = std::vector<int>{rg.roots[0]};
    }
  }
  if (auto v = ned_variant_of(fam)) {
    NedConstraints cons;
    if (level != Level::Graph) {
      if (fam.kind == FamilyKind::Sub) cons.shared_endpoint = rg.roots[0];
      else {
        cons.first_ear_ends = {rg.roots[0]};
        if (level == Level::Edge && rg.roots[1] != rg.roots[0]) cons.first_ear_ends.push_back(rg.roots[1]);
      }
    }
    if (auto d = find_ned(g, *v, cons)) cert["ned"] = serialize_ned(*d);
  }
  if (fam.kind != FamilyKind::MP && fam.kind != FamilyKind::SubK && fam.kind != FamilyKind::FK && is_connected(g) &&
      g.vertex_count() > 0) {
    std::optional<std::pair<int, int>> root;
    if (level != Level::Graph) root = std::make_pair(rg.roots[0], rg.roots.back());
    if (fam.kind != FamilyKind::Sub || level == Level::Graph)
      if (auto td = find_canonical_td(g, td_family_of(fam), root)) cert["td"] = serialize_td(*td);
  }
  return cert;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homomorphism expressivity toolkit for small graphs"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Human-readable output");

  std::string graph_a, graph_b, family_s, level_s = "graph", roots_s, roots_h_s, model_s, which, out_path;
  bool coeffs = false, want_cert = false, want_sub = false;
  std::vector<std::string> twist_edges;
  int clique = 0, jobs = 1;
  std::optional<int> max_n, max_m;

  auto* member = app.add_subcommand("member", "Family membership of a (rooted) graph");
  member->add_option("graph", graph_a, "graph6, @file or edge-list file")->required();
  member->add_option("--family", family_s, "MP, Sub, L, LF, F, Sub(k) or F(k)")->required();
  member->add_option("--level", level_s, "graph, node or edge");
  member->add_option("--roots", roots_s, "u or u,v");
  member->add_flag("--certificate", want_cert, "Print decompositions witnessing membership");

  auto* hom = app.add_subcommand("hom", "Homomorphism count hom(F, G)");
  hom->add_option("F", graph_a)->required();
  hom->add_option("G", graph_b)->required();

  auto* sub = app.add_subcommand("sub", "Subgraph count sub(F, G)");
  sub->add_option("F", graph_a)->required();
  sub->add_option("G", graph_b)->required();

  auto* spasm = app.add_subcommand("spasm", "Homomorphic images of F");
  spasm->add_option("F", graph_a)->required();
  spasm->add_option("--roots", roots_s, "u or u,v");
  spasm->add_flag("--coeffs", coeffs, "Print exact subgraph-count coefficients");

  auto* countable = app.add_subcommand("countable", "Can the family's model subgraph-count F");
  countable->add_option("F", graph_a)->required();
  countable->add_option("--family", family_s)->required();
  countable->add_option("--level", level_s);
  countable->add_option("--roots", roots_s);

  auto* furer = app.add_subcommand("furer", "Fürer graph, twists and clique-augmented pairs");
  furer->add_option("F", graph_a)->required();
  furer->add_option("--twist", twist_edges, "Base edge u,v to twist (repeatable)");
  furer->add_option("--clique", clique, "Clique size for the augmented pair");
  furer->add_option("--roots", roots_s);

  auto* verify = app.add_subcommand("verify", "Build and verify a counterexample pair");
  verify->add_option("F", graph_a)->required();
  verify->add_option("--family", family_s)->required();
  verify->add_option("--level", level_s);
  verify->add_option("--roots", roots_s);
  verify->add_flag("--sub", want_sub, "Also report subgraph counts");

  auto* refine_cmd = app.add_subcommand("refine", "Compare stable refinement colours of G and H");
  refine_cmd->add_option("G", graph_a)->required();
  refine_cmd->add_option("H", graph_b)->required();
  refine_cmd->add_option("--model", model_s)->required();
  refine_cmd->add_option("--level", level_s);
  refine_cmd->add_option("--roots", roots_s, "Marked vertices in G");
  refine_cmd->add_option("--roots-h", roots_h_s, "Marked vertices in H");

  auto* tables = app.add_subcommand("tables", "Batch classification tables");
  tables->add_option("--which", which)->required()->check(CLI::IsMember({"hom", "sub", "cycles", "full"}));
  tables->add_option("--max-n", max_n);
  tables->add_option("--max-m", max_m);
  tables->add_option("--out", out_path);
  tables->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    default_limits();
    if (member->parsed()) {
      FamilyId fam = parse_family(family_s);
      Level level = parse_level(level_s);
      RootedGraph rg = with_roots(load_graph(graph_a), roots_s, level);
      bool in = fam.kind == FamilyKind::SubK || fam.kind == FamilyKind::FK
                    ? (level == Level::Graph ? in_family(rg.graph, fam)
                                             : throw UsageError("parameterised families are graph level only"))
                    : in_family_rooted(rg, fam, level);
      if (!want_cert) {
        std::cout << (in ? "true" : "false") << "\n";
      } else {
        Json j{{"member", in}, {"family", to_string(fam)}, {"level", to_string(level)}};
        if (in) j["certificate"] = certificate(rg, fam, level);
        emit(j, pretty);
      }
      return 0;
    }
    if (hom->parsed() || sub->parsed()) {
      RootedGraph f = load_graph(graph_a), g = load_graph(graph_b);
      std::cout << to_string(hom->parsed() ? hom_count(f, g) : sub_count(f, g)) << "\n";
      return 0;
    }
    if (spasm->parsed()) {
      RootedGraph f = with_roots(load_graph(graph_a), roots_s, std::nullopt);
      if (coeffs) {
        emit(to_json(spasm_coefficients(f)), pretty);
      } else {
        Json arr = Json::array();
        for (const auto& img : enumerate_spasm(f)) arr.push_back(roots_json(img));
        emit(arr, pretty);
      }
      return 0;
    }
    if (countable->parsed()) {
      FamilyId fam = parse_family(family_s);
      Level level = parse_level(level_s);
      RootedGraph f = with_roots(load_graph(graph_a), roots_s, level);
      Countability c = subgraph_countable(f, fam, level);
      Json j{{"countable", c.countable}, {"family", to_string(fam)}, {"level", to_string(level)}};
      if (c.witness) j["witness"] = roots_json(*c.witness);
      emit(j, pretty);
      return 0;
    }
    if (furer->parsed()) {
      RootedGraph f = with_roots(load_graph(graph_a), roots_s, std::nullopt);
      if (clique > 0) {
        CliquePair cp = clique_augmented_pair(f, clique);
        std::cout << to_graph6(cp.g) << "\n" << to_graph6(cp.h) << "\n";
        emit(Json{{"xi", cp.xi}, {"eta_candidates", cp.eta_candidates}}, pretty);
        return 0;
      }
      FurerGraph fg = furer_graph(f.graph);
      std::cout << to_graph6(fg.graph) << "\n";
      if (!twist_edges.empty()) {
        std::vector<Edge> s;
        for (const auto& e : twist_edges) {
          std::vector<int> uv = parse_roots(e);
          if (uv.size() != 2) throw UsageError("twist edge must be u,v");
          s.push_back({uv[0], uv[1]});
        }
        std::cout << to_graph6(twist(fg, s)) << "\n";
      }
      return 0;
    }
    if (verify->parsed()) {
      FamilyId fam = parse_family(family_s);
      Level level = parse_level(level_s);
      RootedGraph f = with_roots(load_graph(graph_a), roots_s, level);
      CounterexamplePair pair = build_counterexample(f, fam, level);
      VerifyReport r = verify_counterexample(f, fam, level, pair, want_sub);
      Json j = to_json(r);
      j["pair"] = to_json(pair);
      emit(j, pretty);
      return r.verdict ? 0 : 1;
    }
    if (refine_cmd->parsed()) {
      ModelId model = parse_model(model_s);
      Level level = parse_level(level_s);
      RootedGraph g = with_roots(load_graph(graph_a), roots_s, level);
      RootedGraph h = with_roots(load_graph(graph_b), roots_h_s, level);
      bool equal = false;
      if (level == Level::Graph) equal = graph_repr_equal(model, g.graph, h.graph);
      else if (level == Level::Node) equal = node_equal(model, g.graph, g.roots[0], h.graph, h.roots[0]);
      else equal = pair_equal(model, g.graph, {g.roots[0], g.roots[1]}, h.graph, {h.roots[0], h.roots[1]});
      emit(Json{{"equal", equal}, {"model", to_string(model)}, {"level", to_string(level)}}, pretty);
      return equal ? 0 : 1;
    }
    if (tables->parsed()) {
      TableBounds b;
      b.jobs = jobs;
      if (which == "cycles") {
        auto rows = cycle_path_table(max_n.value_or(9), default_limits(), jobs);
        write_output(pretty ? pretty_cycle_paths(rows) : to_json(rows).dump() + "\n", out_path);
        return 0;
      }
      if (max_n) b.max_n = *max_n;
      if (max_m) b.max_m = *max_m;
      if (which == "full") {
        auto rows = full_classification(b);
        write_output(pretty ? to_json(rows).dump(2) + "\n" : to_json(rows).dump() + "\n", out_path);
        return 0;
      }
      auto t = which == "hom" ? hom_count_table(b) : sub_count_table(b);
      write_output(pretty ? pretty_count_tables(t) : tables_to_csv(t), out_path);
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    return 3;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
