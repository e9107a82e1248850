#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hypind/antiramsey/coloring.hpp"
#include "hypind/hypergraph.hpp"
#include "hypind/nibble/schedule.hpp"

namespace hypind {

/// Conflict hypergraph restricted to `subset`: one edge e1 u e2 for every
/// pair of same-colored edges inside the subset, relabeled to the subset
/// (ascending parent ids).
inline Induced conflict_hypergraph(const Coloring& c, std::span<const Vertex> subset) {
  constexpr Vertex none = std::numeric_limits<Vertex>::max();
  Induced out;
  out.to_parent = detail::sorted_unique(subset);
  std::vector<Vertex> local(c.n(), none);
  for (std::size_t j = 0; j < out.to_parent.size(); ++j) {
    if (out.to_parent[j] >= c.n()) throw Error(Errc::out_of_range, "subset vertex >= n");
    local[out.to_parent[j]] = static_cast<Vertex>(j);
  }
  std::vector<std::vector<Vertex>> edges;
  std::vector<const std::vector<Vertex>*> inside;
  for (const auto& cls : c.classes()) {
    inside.clear();
    for (const auto& e : cls.edges) {
      if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return local[v] != none; })) inside.push_back(&e);
    }
    for (std::size_t a = 0; a < inside.size(); ++a) {
      for (std::size_t b = a + 1; b < inside.size(); ++b) {
        std::vector<Vertex> u;
        u.reserve(inside[a]->size() + inside[b]->size());
        for (Vertex v : *inside[a]) u.push_back(local[v]);
        for (Vertex v : *inside[b]) u.push_back(local[v]);
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        edges.push_back(std::move(u));
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  out.graph = Hypergraph(out.to_parent.size(), std::move(edges));
  return out;
}

struct CollisionReport {
  std::size_t x = 0;
  /// Y_i for every class with at least one pair inside X.
  std::map<std::uint32_t, std::uint64_t> Y;
  std::uint64_t total_pairs = 0;
  /// Colored (non-fresh) edges lying inside X, by edge size.
  std::map<std::size_t, std::uint64_t> colored_inside;
  bool multicolored = true;

  /// The size-k statistic against c1 x^k with c1 = 1/(4 k!).
  bool event_A(std::size_t k) const {
    const double c1 = 1.0 / (4.0 * factorial(k));
    auto it = colored_inside.find(k);
    const double got = it == colored_inside.end() ? 0.0 : static_cast<double>(it->second);
    return got <= c1 * std::pow(static_cast<double>(x), static_cast<double>(k));
  }
};

namespace detail {

inline void count_inside_by_subsets(const Coloring& c, const std::vector<Vertex>& xs,
                                    std::map<std::uint32_t, std::uint64_t>& inside,
                                    std::map<std::size_t, std::uint64_t>& by_size) {
  std::vector<std::size_t> sizes;
  for (const auto& cls : c.classes()) sizes.push_back(cls.size);
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  std::vector<Vertex> e;
  for (std::size_t s : sizes) {
    if (s > xs.size()) continue;
    for_each_subset(xs.size(), s, [&](const std::vector<std::uint32_t>& idx) {
      e.resize(s);
      for (std::size_t j = 0; j < s; ++j) e[j] = xs[idx[j]];
      if (auto col = c.color_of(e)) {
        // An edge repeated across classes is indexed to its first class only.
        ++inside[*col];
        ++by_size[s];
      }
    });
  }
}

}  // namespace detail

/// Same-color pair counts inside X. Uses whichever is cheaper: enumerating
/// the subsets of X or scanning the colored edges.
inline CollisionReport collisions(const Coloring& c, std::span<const Vertex> X) {
  CollisionReport rep;
  auto xs = detail::sorted_unique(X);
  rep.x = xs.size();
  for (Vertex v : xs) {
    if (v >= c.n()) throw Error(Errc::out_of_range, "probe vertex >= n");
  }
  std::map<std::uint32_t, std::uint64_t> inside;
  double subset_work = 0;
  std::size_t max_size = 0;
  for (const auto& cls : c.classes()) max_size = std::max(max_size, cls.size);
  for (std::size_t s = 2; s <= max_size; ++s) subset_work += binomial(xs.size(), s);
  bool repeated = c.colored_edge_count() != [&] {
    std::size_t total = 0;
    for (const auto& cls : c.classes()) total += cls.edges.size();
    return total;
  }();
  if (!repeated && subset_work < static_cast<double>(c.colored_edge_count())) {
    detail::count_inside_by_subsets(c, xs, inside, rep.colored_inside);
  } else {
    std::vector<char> in(c.n(), 0);
    for (Vertex v : xs) in[v] = 1;
    for (std::uint32_t id = 0; id < c.classes().size(); ++id) {
      const auto& cls = c.classes()[id];
      for (const auto& e : cls.edges) {
        if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return in[v] != 0; })) {
          ++inside[id];
          ++rep.colored_inside[e.size()];
        }
      }
    }
  }
  for (auto [id, cnt] : inside) {
    if (cnt < 2) continue;
    const std::uint64_t y = cnt * (cnt - 1) / 2;
    rep.Y[id] = y;
    rep.total_pairs += y;
  }
  rep.multicolored = rep.total_pairs == 0;
  return rep;
}

}  // namespace hypind
