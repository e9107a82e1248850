#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hypind/error.hpp"
#include "hypind/hypergraph.hpp"

namespace hypind {

// .nhg text format:
//   nhg 1
//   n <N>
//   e <v1> <v2> ...     one line per edge, strictly increasing ids
// Lines starting with '#' are comments. Edges are written in canonical order.

inline void write_nhg(std::ostream& os, const Hypergraph& h) {
  os << "nhg 1\n" << "n " << h.num_vertices() << '\n';
  std::string line;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    line.assign("e");
    for (Vertex v : h.edge(e)) {
      line.push_back(' ');
      line += std::to_string(v);
    }
    line.push_back('\n');
    os << line;
  }
}

inline std::string to_nhg(const Hypergraph& h) {
  std::ostringstream os;
  write_nhg(os, h);
  return os.str();
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_u64(std::string_view tok, std::size_t line_no) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw Error(Errc::parse, "line " + std::to_string(line_no) + ": bad integer '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace detail

inline Hypergraph read_nhg(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  int stage = 0;  // 0: expect header, 1: expect n, 2: edges
  std::uint64_t n = 0;
  std::vector<std::vector<Vertex>> edges;
  auto fail = [&](const std::string& msg) {
    throw Error(Errc::parse, "line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++line_no;
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    if (stage == 0) {
      if (toks.size() != 2 || toks[0] != "nhg" || toks[1] != "1") fail("expected 'nhg 1'");
      stage = 1;
    } else if (stage == 1) {
      if (toks.size() != 2 || toks[0] != "n") fail("expected 'n <count>'");
      n = detail::parse_u64(toks[1], line_no);
      if (n > std::numeric_limits<Vertex>::max()) fail("vertex count too large");
      stage = 2;
    } else {
      if (toks[0] != "e") fail("expected edge line 'e <v1> <v2> ...'");
      std::vector<Vertex> e;
      e.reserve(toks.size() - 1);
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const std::uint64_t v = detail::parse_u64(toks[i], line_no);
        if (v >= n) {
          throw Error(Errc::out_of_range, "line " + std::to_string(line_no) + ": vertex " +
                                              std::to_string(v) + " >= n=" + std::to_string(n));
        }
        if (!e.empty() && v <= e.back()) fail("edge vertices must be strictly increasing");
        e.push_back(static_cast<Vertex>(v));
      }
      edges.push_back(std::move(e));
    }
  }
  if (stage < 2) fail("truncated header");
  return Hypergraph(n, std::move(edges));
}

inline Hypergraph from_nhg(const std::string& text) {
  std::istringstream is(text);
  return read_nhg(is);
}

inline Hypergraph load_nhg(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::parse, "cannot open " + path);
  return read_nhg(f);
}

inline void save_nhg(const std::string& path, const Hypergraph& h) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::parse, "cannot write " + path);
  write_nhg(f, h);
}

}  // namespace hypind
