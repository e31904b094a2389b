#ifndef HOMEXPR_LIMITS_HPP
#define HOMEXPR_LIMITS_HPP

#include <cstdlib>
#include <string>

#include "homexpr/errors.hpp"

namespace homexpr {

struct Limits {
  int enum_vertices = 8;
  int enum_edges = 9;
  int spasm_vertices = 10;
  int treewidth_vertices = 12;
  int iso_vertices = 4096;
  int deletion_k = 4;
  long long search_budget = 20'000'000;
};

// Parses "n=8,m=9,spasm=10,tw=12,iso=4096,k=4,budget=1000000"; unknown keys are rejected.
inline Limits parse_limits(const std::string& text, Limits base = Limits{}) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("limit entry without '=': " + item);
    std::string key = item.substr(0, eq);
    long long value = 0;
    try {
      std::size_t used = 0;
      value = std::stoll(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("bad limit value: " + item);
    }
    if (value < 0) throw ValidationError("negative limit: " + item);
    if (key == "n") base.enum_vertices = static_cast<int>(value);
    else if (key == "m") base.enum_edges = static_cast<int>(value);
    else if (key == "spasm") base.spasm_vertices = static_cast<int>(value);
    else if (key == "tw") base.treewidth_vertices = static_cast<int>(value);
    else if (key == "iso") base.iso_vertices = static_cast<int>(value);
    else if (key == "k") base.deletion_k = static_cast<int>(value);
    else if (key == "budget") base.search_budget = value;
    else throw ValidationError("unknown limit key: " + key);
  }
  return base;
}

inline Limits limits_from_env() {
  const char* env = std::getenv("HOMEXPR_LIMITS");
  if (env == nullptr) return Limits{};
  return parse_limits(env);
}

inline Limits& default_limits() {
  static Limits limits = limits_from_env();
  return limits;
}

}  // namespace homexpr

#endif  // HOMEXPR_LIMITS_HPP
