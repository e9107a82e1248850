#pragma once

// Brute-force reference implementations used only by the tests. They follow
// the definitions literally and share no code with the library's search
// routines.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "hypind/gen.hpp"
#include "hypind/hypergraph.hpp"
#include "hypind/random.hpp"

namespace testutil {

using hypind::Hypergraph;
using hypind::Vertex;

inline bool contains_all(std::uint32_t mask, const std::vector<Vertex>& e) {
  for (Vertex v : e) {
    if (!(mask >> v & 1U)) return false;
  }
  return true;
}

/// Independence number by enumerating all 2^n subsets.
inline std::size_t brute_alpha(const Hypergraph& h) {
  const auto edges = h.edge_list();
  std::size_t best = 0;
  for (std::uint32_t S = 0; S < (1U << h.num_vertices()); ++S) {
    const auto sz = static_cast<std::size_t>(__builtin_popcount(S));
    if (sz <= best) continue;
    bool ok = true;
    for (const auto& e : edges) {
      if (contains_all(S, e)) {
        ok = false;
        break;
      }
    }
    if (ok) best = sz;
  }
  return best;
}

/// Random hypergraph with edges of sizes in [2, k]: each size gets a random
/// number of distinct random edges.
inline Hypergraph random_mixed(std::size_t n, std::size_t k, std::size_t max_edges, std::uint64_t seed) {
  hypind::Rng rng(seed);
  std::set<std::vector<Vertex>> edges;
  const std::size_t m = rng.below(max_edges + 1);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t s = 2 + rng.below(std::min(k, n) - 1);
    auto e = rng.distinct(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(s));
    std::sort(e.begin(), e.end());
    edges.insert(e);
  }
  return Hypergraph(n, {edges.begin(), edges.end()});
}

inline std::vector<Vertex> inter(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// True when edges e_0..e_{j-1}, in this cyclic order, admit pairwise
/// distinct links v_i in e_i ∩ e_{i+1}. Tries every assignment.
inline bool cyclic_links(const std::vector<std::vector<Vertex>>& es) {
  const std::size_t j = es.size();
  std::vector<std::vector<Vertex>> slots(j);
  for (std::size_t i = 0; i < j; ++i) slots[i] = inter(es[i], es[(i + 1) % j]);
  std::vector<Vertex> pick;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == j) return true;
    for (Vertex v : slots[i]) {
      if (std::find(pick.begin(), pick.end(), v) != pick.end()) continue;
      pick.push_back(v);
      if (self(self, i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

struct BruteCensus {
  std::uint64_t two = 0;
  std::map<std::vector<std::uint32_t>, std::uint64_t> three;
  std::map<std::vector<std::uint32_t>, std::uint64_t> four;  // without a 3-cycle inside
  std::uint64_t four_all = 0;
};

inline std::vector<std::uint32_t> sig(std::initializer_list<std::size_t> sizes) {
  std::vector<std::uint32_t> s;
  for (auto x : sizes) s.push_back(static_cast<std::uint32_t>(x));
  std::sort(s.begin(), s.end());
  return s;
}

/// Counts j-cycles as distinct cyclic sequences of distinct edges up to
/// rotation and reflection.
inline BruteCensus brute_census(const Hypergraph& h) {
  BruteCensus c;
  const auto E = h.edge_list();
  const std::size_t m = E.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (inter(E[a], E[b]).size() >= 2) ++c.two;
    }
  }
  auto tri = [&](std::size_t a, std::size_t b, std::size_t d) { return cyclic_links({E[a], E[b], E[d]}); };
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t d = b + 1; d < m; ++d) {
        if (tri(a, b, d)) ++c.three[sig({E[a].size(), E[b].size(), E[d].size()})];
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      for (std::size_t d = b + 1; d < m; ++d) {
        for (std::size_t f = d + 1; f < m; ++f) {
          const bool has3 = tri(a, b, d) || tri(a, b, f) || tri(a, d, f) || tri(b, d, f);
          // The three cyclic orders of four items up to rotation/reflection.
          const std::size_t orders[3][4] = {{a, b, d, f}, {a, b, f, d}, {a, d, b, f}};
          for (const auto& o : orders) {
            if (!cyclic_links({E[o[0]], E[o[1]], E[o[2]], E[o[3]]})) continue;
            ++c.four_all;
            if (!has3) ++c.four[sig({E[a].size(), E[b].size(), E[d].size(), E[f].size()})];
          }
        }
      }
    }
  }
  return c;
}

}  // namespace testutil
