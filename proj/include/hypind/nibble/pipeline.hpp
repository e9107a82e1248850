#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <vector>

#include "hypind/cycles.hpp"
#include "hypind/hypergraph.hpp"
#include "hypind/nibble/basic.hpp"
#include "hypind/nibble/report.hpp"
#include "hypind/nibble/schedule.hpp"
#include "hypind/nibble/semi_random.hpp"
#include "hypind/random.hpp"

namespace hypind {

struct PipelineParams {
  double T = 0;  // 0: max(1.5, max_i t_i)
  Mode mode = Mode::practical;
  double eps = 0;  // 0: 1/(4k)
  /// Per-size pruning constants; missing sizes use the mode default.
  std::map<std::size_t, double> c;
  /// Below this T the pipeline is replaced by random deletion with T ln T.
  double small_T = 4.0;
  std::size_t spencer_trials = 200;
  unsigned threads = 1;
  UncrowdedOptions nibble{};
};

/// Default pruning constant c_i: 1 in practical mode, otherwise
/// min(1, 2^-9 k^-6 C(k-1, i-1) 10^{-3(k-i)/(k-1)}).
inline double default_c(std::size_t k, std::size_t i, Mode mode) {
  if (mode == Mode::practical) return 1.0;
  const double v = std::pow(2.0, -9) * std::pow(static_cast<double>(k), -6) * binomial(k - 1, i - 1) *
                   std::pow(10.0, -3.0 * static_cast<double>(k - i) / static_cast<double>(k - 1));
  return std::min(1.0, v);
}

struct PipelineResult {
  SolveReport report;
  bool took_small_T_path = false;
  std::size_t pruned = 0;
  std::size_t sampled = 0;
  std::size_t hit = 0;          // vertices deleted to break 2-, 3- and 4-cycles
  Hypergraph residual;          // the uncrowded hypergraph handed to the nibble
  CycleCensus sample_census;    // before hitting
  CycleCensus residual_census;  // after hitting; all zero by construction
  SolveReport nibble;           // on the residual, in residual ids
};

namespace detail {

/// Greedy hitting set: repeatedly delete the vertex lying in the most
/// still-unbroken cycles (lowest id on ties).
inline std::vector<Vertex> hit_cycles(std::size_t n, const std::vector<std::vector<Vertex>>& cycles) {
  std::vector<std::vector<std::uint32_t>> of(n);
  std::vector<std::uint32_t> count(n, 0);
  for (std::uint32_t c = 0; c < cycles.size(); ++c) {
    for (Vertex v : cycles[c]) {
      of[v].push_back(c);
      ++count[v];
    }
  }
  auto cmp = [](const std::pair<std::uint32_t, Vertex>& a, const std::pair<std::uint32_t, Vertex>& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  };
  std::priority_queue<std::pair<std::uint32_t, Vertex>, std::vector<std::pair<std::uint32_t, Vertex>>,
                      decltype(cmp)>
      heap(cmp);
  for (Vertex v = 0; v < n; ++v) {
    if (count[v]) heap.push({count[v], v});
  }
  std::vector<char> broken(cycles.size(), 0);
  std::vector<Vertex> out;
  while (!heap.empty()) {
    auto [c, v] = heap.top();
    heap.pop();
    if (c != count[v] || c == 0) continue;
    out.push_back(v);
    for (std::uint32_t id : of[v]) {
      if (broken[id]) continue;
      broken[id] = 1;
      for (Vertex u : cycles[id]) {
        if (--count[u] > 0 && u != v) heap.push({count[u], u});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Independent set for linear hypergraphs whose 2-edges have girth >= 5:
/// prune vertices above k c_i T^{i-1} (ln T)^{(k-i)/(k-1)}; keep each vertex
/// with p = T^{-1+eps}; delete a hitting set of all short cycles of the
/// sample; run the semi-random solver on the now uncrowded residual with
/// driving parameter max(T^eps, its own default); extend greedily in h.
/// For T below `small_T` random deletion with T ln T is used instead. Greedy
/// always runs too and the larger verified set is returned.
inline PipelineResult linear_pipeline(const Hypergraph& h, std::uint64_t seed, const PipelineParams& prm = {}) {
  detail::Stopwatch clock;
  PipelineResult out;
  const std::size_t k = std::max<std::size_t>(2, h.max_edge_size());
  const double T = prm.T > 0 ? prm.T : std::max(1.5, max_average_degree(h));
  const double eps = prm.eps > 0 ? prm.eps : 1.0 / (4.0 * static_cast<double>(k));
  SolveReport& rep = out.report;
  rep.method = "pipeline";
  rep.mode = prm.mode;
  rep.seed = seed;
  rep.T = T;
  rep.params = {{"eps", eps}, {"small_T", prm.small_T}};

  std::vector<Vertex> best = detail::greedy_grow(h, {});
  std::string best_from = "greedy";

  if (h.num_edges() > 0 && T < prm.small_T) {
    out.took_small_T_path = true;
    SpencerOptions so;
    so.T = T * std::log(T);
    so.trials = prm.spencer_trials;
    so.threads = prm.threads;
    auto sp = spencer_solve(h, derive_seed(seed, 5), so);
    if (detail::better(sp.witness, best)) {
      best = sp.witness;
      best_from = "spencer";
    }
  } else if (h.num_edges() > 0) {
    DegreeCaps caps;
    const double lnT = std::log(T);
    for (std::size_t i = 2; i <= k; ++i) {
      const double ci = prm.c.count(i) ? prm.c.at(i) : default_c(k, i, prm.mode);
      caps[i] = static_cast<double>(k) * ci * std::pow(T, static_cast<double>(i - 1)) *
                std::pow(lnT, static_cast<double>(k - i) / static_cast<double>(k - 1));
    }
    auto pr = prune_high_degree(h, caps);
    out.pruned = pr.removed.size();

    Rng rng(derive_seed(seed, 3));
    const double p = std::min(1.0, std::pow(T, -1.0 + eps));
    auto pick = rng.bernoulli_subset(static_cast<std::uint32_t>(pr.residual.graph.num_vertices()), p);
    Induced sample = detail::compose(pr.residual, induced(pr.residual.graph, pick));
    out.sampled = sample.graph.num_vertices();

    out.sample_census = cycle_census(sample.graph, {.max_len = 4, .witnesses = true, .stop_at_first = false});
    std::vector<CycleWitness> all;
    all.insert(all.end(), out.sample_census.two_witnesses.begin(), out.sample_census.two_witnesses.end());
    all.insert(all.end(), out.sample_census.three_witnesses.begin(), out.sample_census.three_witnesses.end());
    all.insert(all.end(), out.sample_census.four_witnesses.begin(), out.sample_census.four_witnesses.end());
    auto hit = detail::hit_cycles(sample.graph.num_vertices(), cycle_vertex_sets(sample.graph, all));
    out.hit = hit.size();
    Induced res = detail::compose(sample, induced_without(sample.graph, hit));
    out.residual = res.graph;
    out.residual_census = cycle_census(res.graph, {.max_len = 4, .witnesses = false, .stop_at_first = false});

    const double T_res = std::max(std::pow(T, eps), uncrowded_default_T(res.graph, prm.nibble.mode));
    out.nibble = uncrowded_solve(res.graph, T_res, derive_seed(seed, 4), prm.nibble);
    auto lifted = extend_to_maximal(h, res.lift(out.nibble.witness));
    rep.params["p"] = p;
    rep.params["T_residual"] = T_res;
    if (detail::better(lifted, best)) {
      best = std::move(lifted);
      best_from = "semi_random";
    }
  }
  rep.params["pruned"] = out.pruned;
  rep.params["sampled"] = out.sampled;
  rep.params["hit"] = out.hit;
  rep.params["residual_uncrowded"] = out.residual_census.uncrowded();
  rep.params["chosen"] = best_from;
  rep.witness = std::move(best);
  detail::finish(rep, h, clock);
  return out;
}

inline SolveReport linear_solve(const Hypergraph& h, std::uint64_t seed, const PipelineParams& prm = {}) {
  return linear_pipeline(h, seed, prm).report;
}

struct BestOptions {
  Mode mode = Mode::practical;
  std::size_t spencer_trials = 200;
  unsigned threads = 1;
};

/// Dispatch on structure: uncrowded -> semi-random solver, linear with
/// girth-5 2-layer -> linear pipeline, otherwise random deletion. Greedy
/// always runs; the largest verified set wins.
inline SolveReport best_of(const Hypergraph& h, std::uint64_t seed, const BestOptions& opt = {}) {
  detail::Stopwatch clock;
  SolveReport rep;
  rep.seed = seed;
  rep.mode = opt.mode;
  std::vector<SolveReport> cands;
  cands.push_back(greedy_solve(h));
  if (is_uncrowded(h)) {
    UncrowdedOptions uo;
    uo.mode = opt.mode;
    cands.push_back(uncrowded_solve(h, 0, derive_seed(seed, 11), uo));
  } else if (is_linear(h) && graph_layer_ok(h)) {
    PipelineParams pp;
    pp.mode = opt.mode;
    pp.spencer_trials = opt.spencer_trials;
    pp.threads = opt.threads;
    pp.nibble.mode = opt.mode;
    cands.push_back(linear_solve(h, derive_seed(seed, 12), pp));
  } else {
    SpencerOptions so;
    so.trials = opt.spencer_trials;
    so.threads = opt.threads;
    cands.push_back(spencer_solve(h, derive_seed(seed, 13), so));
  }
  const SolveReport* win = &cands[0];
  for (const auto& c : cands) {
    if (c.verified && detail::better(c.witness, win->witness)) win = &c;
  }
  rep.method = "best:" + win->method;
  rep.T = win->T;
  rep.witness = win->witness;
  rep.params = {{"candidates", cands.size()}, {"winner", win->method}};
  for (const auto& c : cands) rep.params["size_" + c.method] = c.size();
  detail::finish(rep, h, clock);
  return rep;
}

}  // namespace hypind
