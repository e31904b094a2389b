#ifndef HOMEXPR_JSON_IO_HPP
#define HOMEXPR_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "homexpr/furer.hpp"
#include "homexpr/graph_io.hpp"
#include "homexpr/spasm.hpp"
#include "homexpr/tables.hpp"

namespace homexpr {

using Json = nlohmann::ordered_json;

inline Json to_json(const SpasmBasis& b) {
  Json entries = Json::array();
  for (const auto& e : b.entries)
    entries.push_back({{"image", to_graph6(e.image.graph)}, {"roots", e.image.roots}, {"alpha", to_string(e.alpha)}});
  return {{"pattern", to_graph6(b.pattern.graph)}, {"entries", entries}};
}

inline SpasmBasis spasm_basis_from_json(const Json& j) {
  SpasmBasis b;
  try {
    b.pattern = RootedGraph(parse_graph6(j.at("pattern").get<std::string>()));
    for (const auto& e : j.at("entries")) {
      RootedGraph image(parse_graph6(e.at("image").get<std::string>()), e.at("roots").get<std::vector<int>>());
      b.entries.push_back({std::move(image), parse_rational(e.at("alpha").get<std::string>())});
    }
  } catch (const Json::exception& ex) {
    throw ValidationError(std::string("malformed spasm basis: ") + ex.what());
  }
  return b;
}

inline Json to_json(const VerifyReport& r) {
  Json j{{"repr_equal", r.repr_equal}, {"hom_g", to_string(r.hom_g)}, {"hom_h", to_string(r.hom_h)}};
  if (r.sub_g) j["sub_g"] = to_string(*r.sub_g);
  if (r.sub_h) j["sub_h"] = to_string(*r.sub_h);
  j["verdict"] = r.verdict ? "pass" : "fail";
  return j;
}

inline Json to_json(const CounterexamplePair& p) {
  return {{"g", to_graph6(p.g)}, {"h", to_graph6(p.h)}, {"marks_g", p.marks_g}, {"marks_h", p.marks_h}};
}

inline Json to_json(const std::vector<CountTable>& tables) {
  Json out = Json::array();
  for (const auto& t : tables) {
    Json rows = Json::object();
    for (const auto& r : t.rows) rows[r.label] = r.counts;
    out.push_back({{"level", to_string(t.level)}, {"columns", t.columns}, {"rows", rows}});
  }
  return out;
}

inline Json to_json(const std::vector<CyclePathRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json cells = Json::object();
    for (std::size_t c = 0; c < 6; ++c)
      cells[cycle_path_columns()[c]] = {{"countable", r.cells[c].countable}, {"summary", r.cells[c].summary()}};
    out.push_back({{"family", to_string(r.family)}, {"cells", cells}});
  }
  return out;
}

inline Json to_json(const std::vector<ClassificationRow>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json fams = Json::object();
    for (const auto& e : row.entries) {
      Json cell{{"hom_member", e.hom_member}, {"sub_countable", e.sub_countable}};
      if (e.witness) cell["witness"] = {{"graph6", to_graph6(e.witness->graph)}, {"roots", e.witness->roots}};
      fams[to_string(e.family)] = cell;
    }
    out.push_back({{"graph6", to_graph6(row.pattern.graph)},
                   {"roots", row.pattern.roots},
                   {"level", to_string(row.level)},
                   {"families", fams}});
  }
  return out;
}

}  // namespace homexpr

#endif  // HOMEXPR_JSON_IO_HPP
