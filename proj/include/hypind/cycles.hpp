#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "hypind/hypergraph.hpp"

namespace hypind {

/// Sorted edge sizes of a cycle.
using Signature = std::vector<std::uint32_t>;

/// Edges listed in cyclic order; links[i] lies in edges[i] and edges[i+1]
/// (indices mod j; for j = 2 both links lie in both edges).
struct CycleWitness {
  std::vector<EdgeId> edges;
  std::vector<Vertex> links;
  Signature signature;

  friend bool operator==(const CycleWitness&, const CycleWitness&) = default;
};

/// Counts of short cycles.
///
/// A cycle is a cyclic sequence of distinct edges up to rotation and
/// reflection, so a set of four edges may carry up to three distinct
/// 4-cycles. `four` holds only the 4-cycles none of whose edge triples forms
/// a 3-cycle; `four_all` counts every 4-cycle.
struct CycleCensus {
  int max_len = 0;
  std::uint64_t two_cycle_count = 0;
  std::map<Signature, std::uint64_t> three;
  std::map<Signature, std::uint64_t> four;
  std::uint64_t four_all = 0;
  std::vector<CycleWitness> two_witnesses, three_witnesses, four_witnesses;
  /// True when scanning stopped at the first cycle found; counts are partial.
  bool truncated = false;

  std::uint64_t three_total() const {
    std::uint64_t s = 0;
    for (const auto& [sig, c] : three) s += c;
    return s;
  }
  std::uint64_t four_total() const {
    std::uint64_t s = 0;
    for (const auto& [sig, c] : four) s += c;
    return s;
  }
  bool linear() const { return two_cycle_count == 0; }
  /// Meaningful only when max_len == 4.
  bool uncrowded() const { return two_cycle_count == 0 && three.empty() && four_all == 0; }
};

struct CensusOptions {
  int max_len = 4;
  bool witnesses = false;
  /// Stop as soon as any cycle of length <= max_len is found.
  bool stop_at_first = false;
};

namespace detail {

inline bool shares(std::span<const Vertex> a, Vertex v) {
  return std::binary_search(a.begin(), a.end(), v);
}

/// Direct test: do edges a, b, c admit distinct x in a&b, y in b&c, z in c&a?
inline bool forms_three_cycle(const Hypergraph& h, EdgeId a, EdgeId b, EdgeId c) {
  auto ea = h.edge(a), eb = h.edge(b), ec = h.edge(c);
  for (Vertex x : ea) {
    if (!shares(eb, x)) continue;
    for (Vertex y : eb) {
      if (y == x || !shares(ec, y)) continue;
      for (Vertex z : ec) {
        if (z != x && z != y && shares(ea, z)) return true;
      }
    }
  }
  return false;
}

inline Signature signature_of(const Hypergraph& h, std::span<const EdgeId> edges) {
  Signature s;
  for (EdgeId e : edges) s.push_back(static_cast<std::uint32_t>(h.edge_size(e)));
  std::sort(s.begin(), s.end());
  return s;
}

struct Found3 {
  std::array<EdgeId, 3> key;  // sorted edge ids
  std::array<EdgeId, 3> order;
  std::array<Vertex, 3> links;
  bool operator<(const Found3& o) const { return std::tie(key, order, links) < std::tie(o.key, o.order, o.links); }
};

struct Found4 {
  // Sorted edge ids plus the edge opposite the smallest one; this pins down
  // the cyclic order up to rotation and reflection.
  std::array<EdgeId, 5> key;
  std::array<EdgeId, 4> order;
  std::array<Vertex, 4> links;
  bool operator<(const Found4& o) const { return std::tie(key, order, links) < std::tie(o.key, o.order, o.links); }
};

inline std::array<EdgeId, 5> four_key(const std::array<EdgeId, 4>& o) {
  std::array<EdgeId, 5> k{};
  std::array<EdgeId, 4> s = o;
  std::sort(s.begin(), s.end());
  std::copy(s.begin(), s.end(), k.begin());
  for (int i = 0; i < 4; ++i) {
    if (o[i] == s[0]) k[4] = o[(i + 2) % 4];
  }
  return k;
}

}  // namespace detail

/// Short-cycle census.
///
/// Cycles are enumerated from their smallest link vertex x: 3-cycles as
/// x-A-y-B-z-C-x closed through an edge at x, 4-cycles as two wedges
/// x-A-y-B-w and x-D-z-C-w meeting at w. Each cycle may be reached from
/// several link assignments, so results are deduplicated on the edge
/// sequence. Cost is about n * (k * max degree)^2 plus the output size.
inline CycleCensus cycle_census(const Hypergraph& h, const CensusOptions& opt = {}) {
  CycleCensus out;
  out.max_len = opt.max_len;
  const std::size_t n = h.num_vertices();
  const std::size_t m = h.num_edges();

  // 2-cycles: pairs of edges sharing at least two vertices.
  {
    std::vector<std::uint32_t> shared(m, 0);
    std::vector<EdgeId> touched;
    for (EdgeId a = 0; a < m && !out.truncated; ++a) {
      touched.clear();
      for (Vertex v : h.edge(a)) {
        for (EdgeId b : h.incident(v)) {
          if (b <= a) continue;
          if (shared[b]++ == 0) touched.push_back(b);
        }
      }
      std::sort(touched.begin(), touched.end());
      for (EdgeId b : touched) {
        if (shared[b] >= 2) {
          ++out.two_cycle_count;
          if (opt.witnesses) {
            CycleWitness w{{a, b}, {}, {}};
            for (Vertex v : h.edge(a)) {
              if (w.links.size() < 2 && detail::shares(h.edge(b), v)) w.links.push_back(v);
            }
            w.signature = detail::signature_of(h, w.edges);
            out.two_witnesses.push_back(std::move(w));
          }
          if (opt.stop_at_first) out.truncated = true;
        }
        shared[b] = 0;
      }
    }
  }
  if (opt.max_len < 3 || out.truncated) return out;

  // adj1[y] = edges containing both the current x and y.
  std::vector<std::vector<EdgeId>> adj1(n);
  std::vector<Vertex> adj1_touched;
  std::vector<detail::Found3> found3;

  // Buckets of wedges x-A-y-B-w keyed by endpoint w.
  struct Wedge {
    EdgeId a, b;
    Vertex y;
  };
  std::vector<std::vector<Wedge>> bucket(n);
  std::vector<Vertex> bucket_touched;
  std::vector<std::uint32_t> ends(n, 0);
  std::vector<Vertex> ends_touched;
  std::vector<detail::Found4> found4;

  for (Vertex x = 0; x < n; ++x) {
    adj1_touched.clear();
    for (EdgeId a : h.incident(x)) {
      for (Vertex y : h.edge(a)) {
        if (y <= x) continue;
        if (adj1[y].empty()) adj1_touched.push_back(y);
        adj1[y].push_back(a);
      }
    }

    // 3-cycles with links x in A&B, y in B&C, z in C&A, and x < y, z.
    for (EdgeId b : h.incident(x)) {
      for (Vertex y : h.edge(b)) {
        if (y <= x) continue;
        for (EdgeId c : h.incident(y)) {
          if (c == b) continue;
          for (Vertex z : h.edge(c)) {
            if (z <= x || z == y) continue;
            for (EdgeId a : adj1[z]) {
              if (a == b || a == c) continue;
              detail::Found3 f{{a, b, c}, {a, b, c}, {x, y, z}};
              std::sort(f.key.begin(), f.key.end());
              found3.push_back(f);
              if (opt.stop_at_first) {
                out.truncated = true;
                out.three[detail::signature_of(h, f.order)] += 1;
                return out;
              }
            }
          }
        }
      }
    }

    if (opt.max_len >= 4) {
      // Two passes over the wedges: count endpoints, then keep only wedges
      // whose endpoint is shared with another wedge.
      bucket_touched.clear();
      auto for_each_wedge = [&](auto&& f) {
        for (EdgeId a : h.incident(x)) {
          for (Vertex y : h.edge(a)) {
            if (y <= x) continue;
            for (EdgeId b : h.incident(y)) {
              if (b == a) continue;
              for (Vertex w : h.edge(b)) {
                if (w <= x || w == y) continue;
                f(a, y, b, w);
              }
            }
          }
        }
      };
      for_each_wedge([&](EdgeId, Vertex, EdgeId, Vertex w) {
        if (ends[w]++ == 0) ends_touched.push_back(w);
      });
      for_each_wedge([&](EdgeId a, Vertex y, EdgeId b, Vertex w) {
        if (ends[w] < 2) return;
        if (bucket[w].empty()) bucket_touched.push_back(w);
        bucket[w].push_back({a, b, y});
      });
      for (Vertex w : ends_touched) ends[w] = 0;
      ends_touched.clear();
      for (Vertex w : bucket_touched) {
        const auto& ws = bucket[w];
        for (std::size_t i = 0; i < ws.size(); ++i) {
          for (std::size_t j = i + 1; j < ws.size(); ++j) {
            const Wedge& p = ws[i];
            const Wedge& q = ws[j];
            if (p.y == q.y) continue;
            if (p.a == q.a || p.a == q.b || p.b == q.a || p.b == q.b) continue;
            // Cycle order: p.a (x..p.y), p.b (p.y..w), q.b (w..q.y), q.a (q.y..x).
            detail::Found4 f{{}, {p.a, p.b, q.b, q.a}, {p.y, w, q.y, x}};
            f.key = detail::four_key(f.order);
            found4.push_back(f);
            if (opt.stop_at_first) {
              out.truncated = true;
              out.four_all = 1;
              out.four[detail::signature_of(h, f.order)] += 1;
              return out;
            }
          }
        }
        bucket[w].clear();
      }
    }
    for (Vertex y : adj1_touched) adj1[y].clear();
  }

  std::sort(found3.begin(), found3.end());
  for (std::size_t i = 0; i < found3.size(); ++i) {
    if (i > 0 && found3[i].key == found3[i - 1].key) continue;
    const auto& f = found3[i];
    auto sig = detail::signature_of(h, f.order);
    out.three[sig] += 1;
    if (opt.witnesses) {
      out.three_witnesses.push_back({{f.order.begin(), f.order.end()}, {f.links.begin(), f.links.end()}, sig});
    }
  }

  std::sort(found4.begin(), found4.end());
  for (std::size_t i = 0; i < found4.size(); ++i) {
    if (i > 0 && found4[i].key == found4[i - 1].key) continue;
    const auto& f = found4[i];
    ++out.four_all;
    const auto& e = f.order;
    bool has_three = detail::forms_three_cycle(h, e[0], e[1], e[2]) ||
                     detail::forms_three_cycle(h, e[0], e[1], e[3]) ||
                     detail::forms_three_cycle(h, e[0], e[2], e[3]) ||
                     detail::forms_three_cycle(h, e[1], e[2], e[3]);
    if (has_three) continue;
    auto sig = detail::signature_of(h, f.order);
    out.four[sig] += 1;
    if (opt.witnesses) {
      out.four_witnesses.push_back({{e.begin(), e.end()}, {f.links.begin(), f.links.end()}, sig});
    }
  }
  return out;
}

inline bool is_linear(const Hypergraph& h) {
  return cycle_census(h, {.max_len = 2, .witnesses = false, .stop_at_first = true}).two_cycle_count == 0;
}

namespace detail {

/// Girth >= 5 for a 2-uniform hypergraph: from each x, no neighbour of a
/// neighbour is itself a neighbour (triangle), and no vertex is reached by
/// two different paths of length 2 (4-cycle).
inline bool graph_girth_at_least_5(const Hypergraph& h) {
  const std::size_t n = h.num_vertices();
  std::vector<std::uint32_t> start(n + 1, 0);
  std::vector<Vertex> nbr;
  nbr.reserve(2 * h.num_edges());
  for (Vertex x = 0; x < n; ++x) {
    for (EdgeId e : h.incident(x)) {
      auto s = h.edge(e);
      nbr.push_back(s[0] == x ? s[1] : s[0]);
    }
    start[x + 1] = static_cast<std::uint32_t>(nbr.size());
  }
  std::vector<std::uint32_t> adj_mark(n, 0), reach_mark(n, 0);
  for (Vertex x = 0; x < n; ++x) {
    const std::uint32_t stamp = x + 1;
    for (std::uint32_t i = start[x]; i < start[x + 1]; ++i) adj_mark[nbr[i]] = stamp;
    for (std::uint32_t i = start[x]; i < start[x + 1]; ++i) {
      const Vertex y = nbr[i];
      for (std::uint32_t j = start[y]; j < start[y + 1]; ++j) {
        const Vertex z = nbr[j];
        if (z == x) continue;
        if (adj_mark[z] == stamp || reach_mark[z] == stamp) return false;
        reach_mark[z] = stamp;
      }
    }
  }
  return true;
}

}  // namespace detail

/// No 2-, 3- or 4-cycles of any kind.
inline bool is_uncrowded(const Hypergraph& h) {
  if (h.max_edge_size() == 2) return detail::graph_girth_at_least_5(h);
  auto c = cycle_census(h, {.max_len = 4, .witnesses = false, .stop_at_first = true});
  return !c.truncated;
}

/// The 2-element edges, viewed as a graph, have girth at least 5.
inline bool graph_layer_ok(const Hypergraph& h) {
  const std::size_t two[] = {2};
  return is_uncrowded(size_layers(h, two));
}

/// Every edge set of each witness in `w`, as vertex hitting targets: a cycle
/// is destroyed by deleting any vertex of any of its edges.
inline std::vector<std::vector<Vertex>> cycle_vertex_sets(const Hypergraph& h,
                                                          std::span<const CycleWitness> w) {
  std::vector<std::vector<Vertex>> out;
  out.reserve(w.size());
  for (const auto& c : w) {
    std::vector<Vertex> vs;
    for (EdgeId e : c.edges) {
      auto s = h.edge(e);
      vs.insert(vs.end(), s.begin(), s.end());
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    out.push_back(std::move(vs));
  }
  return out;
}

}  // namespace hypind
