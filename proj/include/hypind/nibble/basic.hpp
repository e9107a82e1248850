#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <span>
#include <vector>

#include "hypind/hypergraph.hpp"
#include "hypind/nibble/report.hpp"
#include "hypind/parallel.hpp"
#include "hypind/random.hpp"

namespace hypind {

namespace detail {

/// Greedy growth of an independent set. Starting from `seed_set` (which must
/// be independent), repeatedly adds the remaining vertex of least degree in
/// the residual hypergraph, lowest id on ties. After each addition, every
/// vertex that would now complete an edge is deleted, and edges through a
/// deleted vertex stop counting. The result is maximal.
inline std::vector<Vertex> greedy_grow(const Hypergraph& h, std::span<const Vertex> seed_set) {
  const std::size_t n = h.num_vertices();
  enum : std::uint8_t { kFree, kChosen, kDeleted };
  std::vector<std::uint8_t> state(n, kFree);
  std::vector<std::uint32_t> chosen_in(h.num_edges(), 0);
  std::vector<char> dead(h.num_edges(), 0);
  std::vector<std::uint32_t> deg(n, 0);
  for (Vertex v = 0; v < n; ++v) deg[v] = static_cast<std::uint32_t>(h.degree(v));

  using Key = std::pair<std::uint32_t, Vertex>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;

  auto remove = [&](Vertex u) {
    state[u] = kDeleted;
    for (EdgeId e : h.incident(u)) {
      if (dead[e]) continue;
      dead[e] = 1;
      for (Vertex w : h.edge(e)) {
        if (w == u || state[w] != kFree) continue;
        --deg[w];
        heap.push({deg[w], w});
      }
    }
  };

  std::vector<Vertex> out;
  auto choose = [&](Vertex u) {
    state[u] = kChosen;
    out.push_back(u);
    for (EdgeId e : h.incident(u)) {
      if (dead[e]) continue;
      if (++chosen_in[e] + 1 == h.edge_size(e)) {
        for (Vertex w : h.edge(e)) {
          if (state[w] == kFree) remove(w);
        }
      }
    }
  };

  for (Vertex v : seed_set) {
    if (state[v] == kFree) choose(v);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (state[v] == kFree) heap.push({deg[v], v});
  }
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (state[v] != kFree || d != deg[v]) continue;
    choose(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Minimum-degree greedy; maximal independent set.
inline SolveReport greedy_solve(const Hypergraph& h) {
  detail::Stopwatch clock;
  SolveReport r;
  r.method = "greedy";
  r.witness = detail::greedy_grow(h, {});
  detail::finish(r, h, clock);
  return r;
}

/// Extends an independent set of h to a maximal one with the greedy rule.
inline std::vector<Vertex> extend_to_maximal(const Hypergraph& h, std::span<const Vertex> independent) {
  return detail::greedy_grow(h, independent);
}

/// T = max(max_i t_i, 1/2).
inline double spencer_default_T(const Hypergraph& h) { return std::max(0.5, max_average_degree(h)); }

struct SpencerOptions {
  double T = 0;  // 0 = spencer_default_T
  std::size_t trials = 200;
  unsigned threads = 1;
};

namespace detail {

/// One random-deletion trial: keep each vertex with probability p, then
/// for each edge still inside the kept set (in edge id order) drop its
/// vertex of highest remaining degree, lowest id on ties.
inline std::vector<Vertex> spencer_trial(const Hypergraph& h, double p, std::uint64_t seed,
                                         std::vector<std::uint8_t>& in, std::vector<std::uint32_t>& deg) {
  Rng rng(seed);
  auto sample = rng.bernoulli_subset(static_cast<std::uint32_t>(h.num_vertices()), p);
  for (Vertex v : sample) in[v] = 1;
  std::vector<EdgeId> inside;
  for (Vertex v : sample) {
    for (EdgeId e : h.incident(v)) {
      auto edge = h.edge(e);
      if (edge.front() != v) continue;
      if (std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return in[u] != 0; })) inside.push_back(e);
    }
  }
  std::sort(inside.begin(), inside.end());
  for (EdgeId e : inside) {
    for (Vertex u : h.edge(e)) ++deg[u];
  }
  auto alive = [&](EdgeId e) {
    auto edge = h.edge(e);
    return std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return in[u] != 0; });
  };
  for (EdgeId e : inside) {
    if (!alive(e)) continue;
    Vertex pick = h.edge(e).front();
    for (Vertex u : h.edge(e)) {
      if (deg[u] > deg[pick]) pick = u;
    }
    in[pick] = 0;
    for (EdgeId f : h.incident(pick)) {
      if (!std::binary_search(inside.begin(), inside.end(), f)) continue;
      // f lost pick; it was alive iff all its other vertices are still in.
      auto edge = h.edge(f);
      bool was_alive = std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return u == pick || in[u] != 0; });
      if (!was_alive) continue;
      for (Vertex u : edge) --deg[u];
    }
  }
  std::vector<Vertex> out;
  for (Vertex v : sample) {
    if (in[v]) out.push_back(v);
    in[v] = 0;
    deg[v] = 0;
  }
  return out;
}

}  // namespace detail

/// Random sampling with p = 1/(2T) followed by one deletion per surviving
/// edge; best of `trials` independent trials (largest, then
/// lexicographically smallest). Trial j uses seed derive_seed(seed, j), so
/// the result does not depend on the thread count.
inline SolveReport spencer_solve(const Hypergraph& h, std::uint64_t seed, SpencerOptions opt = {}) {
  detail::Stopwatch clock;
  SolveReport r;
  r.method = "spencer";
  r.seed = seed;
  r.T = opt.T > 0 ? opt.T : spencer_default_T(h);
  const double p = std::min(1.0, 1.0 / (2.0 * r.T));
  const std::size_t trials = std::max<std::size_t>(1, opt.trials);
  const unsigned threads = std::max(1U, std::min<unsigned>(resolve_threads(opt.threads), static_cast<unsigned>(trials)));

  std::vector<std::vector<Vertex>> best(threads);
  std::vector<char> have(threads, 0);
  parallel_for(threads, threads, [&](std::size_t w) {
    std::vector<std::uint8_t> in(h.num_vertices(), 0);
    std::vector<std::uint32_t> deg(h.num_vertices(), 0);
    for (std::size_t j = w; j < trials; j += threads) {
      auto s = detail::spencer_trial(h, p, derive_seed(seed, 0x5e11ce, j), in, deg);
      if (!have[w] || detail::better(s, best[w])) {
        best[w] = std::move(s);
        have[w] = 1;
      }
    }
  });
  for (std::size_t w = 0; w < threads; ++w) {
    if (have[w] && detail::better(best[w], r.witness)) r.witness = best[w];
  }
  r.params = {{"p", p}, {"trials", trials}};
  detail::finish(r, h, clock);
  return r;
}

/// Per-size degree caps; sizes without an entry are unconstrained.
using DegreeCaps = std::map<std::size_t, double>;

struct PruneResult {
  Induced residual;
  std::vector<Vertex> removed;  // parent ids, ascending
};

/// Removes every vertex whose d_i exceeds caps[i] for some i, recomputing
/// degrees in the residual and repeating until no vertex violates a cap.
inline PruneResult prune_high_degree(const Hypergraph& h, const DegreeCaps& caps) {
  const std::size_t n = h.num_vertices();
  std::vector<char> gone(n, 0);
  std::vector<char> dead(h.num_edges(), 0);
  std::vector<std::vector<std::uint32_t>> deg(h.max_edge_size() + 1);
  for (std::size_t i = 2; i <= h.max_edge_size(); ++i) deg[i].assign(n, 0);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    for (Vertex v : h.edge(e)) ++deg[h.edge_size(e)][v];
  }
  auto violates = [&](Vertex v) {
    for (auto [i, c] : caps) {
      if (i < deg.size() && !deg[i].empty() && static_cast<double>(deg[i][v]) > c) return true;
    }
    return false;
  };
  std::vector<Vertex> wave;
  for (Vertex v = 0; v < n; ++v) {
    if (violates(v)) wave.push_back(v);
  }
  while (!wave.empty()) {
    for (Vertex v : wave) gone[v] = 1;
    std::vector<Vertex> touched;
    for (Vertex v : wave) {
      for (EdgeId e : h.incident(v)) {
        if (dead[e]) continue;
        dead[e] = 1;
        const std::size_t i = h.edge_size(e);
        for (Vertex u : h.edge(e)) {
          --deg[i][u];
          if (!gone[u]) touched.push_back(u);
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    wave.clear();
    for (Vertex u : touched) {
      if (violates(u)) wave.push_back(u);
    }
  }
  PruneResult out;
  for (Vertex v = 0; v < n; ++v) {
    if (gone[v]) out.removed.push_back(v);
  }
  out.residual = induced_without(h, out.removed);
  return out;
}

}  // namespace hypind
