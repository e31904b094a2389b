#ifndef HOMEXPR_GRAPH_IO_HPP
#define HOMEXPR_GRAPH_IO_HPP

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "homexpr/errors.hpp"
#include "homexpr/graph.hpp"

namespace homexpr {

inline Graph parse_graph6(std::string_view text) {
  std::size_t base = 0;
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) base = header.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);

  auto byte_at = [&](std::size_t i) -> int {
    if (i >= text.size()) throw ParseError("graph6 record truncated", i);
    int c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126) throw ParseError("graph6 byte outside 63..126", i);
    return c - 63;
  };

  std::size_t pos = base;
  long long n = 0;
  if (pos >= text.size()) throw ParseError("graph6 record empty", pos);
  int first = byte_at(pos);
  if (first < 63) {
    n = first;
    pos += 1;
  } else {
    int second = byte_at(pos + 1);
    if (second < 63) {
      n = 0;
      for (int k = 1; k <= 3; ++k) n = (n << 6) | byte_at(pos + k);
      if (n < 63) throw ParseError("graph6 length field not minimal", pos);
      pos += 4;
    } else {
      n = 0;
      for (int k = 2; k <= 7; ++k) n = (n << 6) | byte_at(pos + k);
      if (n < 258048) throw ParseError("graph6 length field not minimal", pos);
      pos += 8;
    }
  }
  if (n > (1 << 20)) throw ParseError("graph6 vertex count too large", base);

  long long bit_count = n * (n - 1) / 2;
  long long byte_count = (bit_count + 5) / 6;
  if (static_cast<long long>(text.size() - pos) != byte_count) {
    std::size_t where = static_cast<long long>(text.size() - pos) < byte_count ? text.size() : pos + byte_count;
    throw ParseError("graph6 edge field has wrong length", where);
  }
  Graph g(static_cast<int>(n));
  long long k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      int chunk = byte_at(pos + k / 6);
      if ((chunk >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  if (bit_count % 6 != 0) {
    int chunk = byte_at(pos + byte_count - 1);
    int pad = static_cast<int>(6 - bit_count % 6);
    if (chunk & ((1 << pad) - 1)) throw ParseError("graph6 padding bits nonzero", pos + byte_count - 1);
  }
  return g;
}

inline std::string to_graph6(const Graph& g) {
  long long n = g.vertex_count();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  }
  int chunk = 0, filled = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      chunk = (chunk << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(chunk + 63));
        chunk = filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>((chunk << (6 - filled)) + 63));
  return out;
}

// Line format: "n <count>", "e u v", "l u <label>", "r u [v]"; '#' starts a comment.
inline RootedGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_n = false;
  Graph g;
  std::vector<int> roots;
  auto fail = [&](const std::string& msg) {
    throw ValidationError("line " + std::to_string(line_no) + ": " + msg);
  };
  auto read_int = [&](std::istringstream& ls, const char* what) {
    long long v;
    if (!(ls >> v)) fail(std::string("expected ") + what);
    if (v < -(1LL << 31) || v > (1LL << 31) - 1) fail(std::string(what) + " out of range");
    return static_cast<int>(v);
  };
  auto check_vertex = [&](int v) {
    if (v < 0 || v >= g.vertex_count()) fail("vertex " + std::to_string(v) + " out of range");
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "n") {
      if (have_n) fail("repeated 'n' line");
      int n = read_int(ls, "vertex count");
      if (n < 0) fail("negative vertex count");
      g.reset(n);
      have_n = true;
    } else {
      if (!have_n) fail("'" + tag + "' before 'n' line");
      if (tag == "e") {
        int u = read_int(ls, "vertex"), v = read_int(ls, "vertex");
        check_vertex(u);
        check_vertex(v);
        if (u == v) fail("self-loop on vertex " + std::to_string(u));
        if (g.has_edge(u, v)) fail("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        g.add_edge(u, v);
      } else if (tag == "l") {
        int u = read_int(ls, "vertex");
        check_vertex(u);
        g.set_label(u, read_int(ls, "label"));
      } else if (tag == "r") {
        std::string tok;
        int count = 0;
        while (ls >> tok) {
          std::size_t used = 0;
          int v = -1;
          try {
            v = std::stoi(tok, &used);
          } catch (const std::exception&) {
            used = 0;
          }
          if (used != tok.size()) fail("bad root '" + tok + "'");
          check_vertex(v);
          roots.push_back(v);
          ++count;
        }
        if (count == 0) fail("expected vertex");
        if (roots.size() > 2) fail("more than two roots");
      } else {
        fail("unknown tag '" + tag + "'");
      }
    }
    std::string rest;
    if (ls.good() && (ls >> rest)) fail("trailing token '" + rest + "'");
  }
  if (!have_n) throw ValidationError("missing 'n' line");
  return RootedGraph(std::move(g), std::move(roots));
}

inline std::string to_edge_list(const RootedGraph& rg) {
  std::ostringstream out;
  const Graph& g = rg.graph;
  out << "n " << g.vertex_count() << "\n";
  for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.label(v) != 0) out << "l " << v << " " << g.label(v) << "\n";
  if (!rg.roots.empty()) {
    out << "r";
    for (int r : rg.roots) out << " " << r;
    out << "\n";
  }
  return out.str();
}

}  // namespace homexpr

#endif  // HOMEXPR_GRAPH_IO_HPP
