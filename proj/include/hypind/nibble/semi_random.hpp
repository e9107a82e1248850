#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "hypind/cycles.hpp"
#include "hypind/hypergraph.hpp"
#include "hypind/nibble/basic.hpp"
#include "hypind/nibble/report.hpp"
#include "hypind/nibble/schedule.hpp"
#include "hypind/random.hpp"

namespace hypind {

namespace detail {

/// Composition: ids of `inner` (an induced subgraph of outer.graph) in terms
/// of outer's parent.
inline Induced compose(const Induced& outer, Induced inner) {
  for (auto& v : inner.to_parent) v = outer.to_parent[v];
  return inner;
}

inline Induced identity_induced(const Hypergraph& h) {
  Induced r;
  r.graph = h;
  r.to_parent.resize(h.num_vertices());
  for (Vertex v = 0; v < h.num_vertices(); ++v) r.to_parent[v] = v;
  return r;
}

/// Deletes vertices of highest current degree (lowest id on ties) until at
/// most `target` remain.
inline Induced trim_highest_degree(const Hypergraph& h, std::size_t target) {
  const std::size_t n = h.num_vertices();
  if (n <= target) return identity_induced(h);
  std::vector<std::uint32_t> deg(n);
  for (Vertex v = 0; v < n; ++v) deg[v] = static_cast<std::uint32_t>(h.degree(v));
  auto cmp = [](const std::pair<std::uint32_t, Vertex>& a, const std::pair<std::uint32_t, Vertex>& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  };
  std::priority_queue<std::pair<std::uint32_t, Vertex>, std::vector<std::pair<std::uint32_t, Vertex>>,
                      decltype(cmp)>
      heap(cmp);
  for (Vertex v = 0; v < n; ++v) heap.push({deg[v], v});
  std::vector<char> gone(n, 0), dead(h.num_edges(), 0);
  std::vector<Vertex> removed;
  while (n - removed.size() > target) {
    auto [d, v] = heap.top();
    heap.pop();
    if (gone[v] || d != deg[v]) continue;
    gone[v] = 1;
    removed.push_back(v);
    for (EdgeId e : h.incident(v)) {
      if (dead[e]) continue;
      dead[e] = 1;
      for (Vertex u : h.edge(e)) {
        if (gone[u]) continue;
        --deg[u];
        heap.push({deg[u], u});
      }
    }
  }
  return induced_without(h, removed);
}

inline bool caps_hold(const Hypergraph& h, const NibbleSchedule& sc, double r) {
  auto prof = degree_profile(h);
  for (std::size_t i = 2; i <= prof.k; ++i) {
    const double c = sc.cap(i, r);
    for (auto d : prof.by_size[i]) {
      if (static_cast<double>(d) > c) return false;
    }
  }
  return true;
}

inline DegreeCaps caps_for(const NibbleSchedule& sc, double r) {
  DegreeCaps c;
  for (std::size_t i = 2; i <= sc.k; ++i) c[i] = sc.cap(i, r);
  return c;
}

}  // namespace detail

struct PrepResult {
  Induced sub;  // to_parent maps into the input hypergraph
  bool ok = false;  // false: size window unreachable within the budget
  std::size_t attempts = 0;
  std::size_t removed_for_caps = 0;
  double window_low = 0, window_high = 0;
};

/// Random subsample with p = e^{-s}, pruned to the round-s degree caps and
/// trimmed to at most N/e^s vertices. Retries with fresh randomness while
/// fewer than (3/4) N/e^s vertices remain; on failure the largest attempt
/// is returned with ok = false.
inline PrepResult subsample_prepare(const Hypergraph& h, const NibbleSchedule& sc, std::uint64_t seed,
                                    std::size_t budget = 32) {
  const double N = static_cast<double>(h.num_vertices());
  const double p = std::exp(-sc.s);
  PrepResult best;
  best.window_high = N * p;
  best.window_low = sc.window_low * N * p;
  for (std::size_t a = 0; a < std::max<std::size_t>(1, budget); ++a) {
    Rng rng(derive_seed(seed, 0x9e9, a));
    auto sample = rng.bernoulli_subset(static_cast<std::uint32_t>(h.num_vertices()), p);
    Induced s = induced(h, sample);
    auto pruned = prune_high_degree(s.graph, detail::caps_for(sc, sc.s));
    Induced cur = detail::compose(s, std::move(pruned.residual));
    const auto high = static_cast<std::size_t>(std::floor(best.window_high + 1e-9));
    cur = detail::compose(cur, detail::trim_highest_degree(cur.graph, high));
    const bool ok = static_cast<double>(cur.graph.num_vertices()) >= best.window_low;
    if (a == 0 || ok || cur.graph.num_vertices() > best.sub.graph.num_vertices()) {
      best.sub = std::move(cur);
      best.removed_for_caps = pruned.removed.size();
    }
    best.attempts = a + 1;
    if (ok) {
      best.ok = true;
      break;
    }
  }
  return best;
}

struct StepOutcome {
  bool ok = false;
  std::vector<Vertex> independent;  // ids of the input hypergraph
  Induced rest;                     // induced on V*, ids of the input hypergraph
  RoundTrace trace;
  std::string failure;  // last failed check when !ok
};

/// One semi-random round on h at schedule round r.
///
/// Each vertex is sampled with probability min(1, w_r / t_r); I is the set
/// of sampled vertices lying in no edge inside the sample. V* starts as the
/// unsampled vertices. For every edge meeting I that contains no discarded
/// sample vertex, one vertex of its remainder (the one of highest degree) is
/// removed from V*, so no edge lies inside I + V* without lying inside V*.
/// V* is then trimmed by highest degree to floor(n/e) and loses any vertex
/// still violating the round r+1 caps. The attempt succeeds when
///   |I| >= (0.99/e) w_r n / t_r  and  |V*| >= (1 - eps) n / e;
/// otherwise it is retried with fresh randomness up to `retries` times.
inline StepOutcome nibble_step(const Hypergraph& h, const NibbleSchedule& sc, double r, std::uint64_t seed,
                               std::size_t retries = 32) {
  const std::size_t n = h.num_vertices();
  const double t = sc.t(r);
  const double q = std::min(1.0, sc.w(r) / t);
  const double need_i = sc.step_size_floor(r, n);
  const double upper = static_cast<double>(n) / std::exp(1.0);
  const double lower = (1.0 - sc.eps) * upper;
  const auto target = static_cast<std::size_t>(std::floor(upper + 1e-9));

  StepOutcome out;
  out.trace.r = r;
  out.trace.n_in = n;
  enum : std::uint8_t { kRest, kKept, kDiscarded, kKilled };
  std::vector<std::uint8_t> state(n);
  for (std::size_t a = 0; a < std::max<std::size_t>(1, retries); ++a) {
    Rng rng(derive_seed(seed, 0x57e9, a));
    auto sample = rng.bernoulli_subset(static_cast<std::uint32_t>(n), q);
    std::fill(state.begin(), state.end(), kRest);
    for (Vertex v : sample) state[v] = kKept;
    for (Vertex v : sample) {
      for (EdgeId e : h.incident(v)) {
        auto edge = h.edge(e);
        if (edge.front() != v) continue;
        if (std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return state[u] != kRest; })) {
          for (Vertex u : edge) state[u] = kDiscarded;
        }
      }
    }
    std::vector<Vertex> I;
    for (Vertex v : sample) {
      if (state[v] == kKept) I.push_back(v);
    }
    for (Vertex v : I) {
      for (EdgeId e : h.incident(v)) {
        auto edge = h.edge(e);
        bool guarded = false;
        Vertex pick = 0;
        std::size_t pick_deg = 0;
        bool any = false;
        for (Vertex u : edge) {
          if (state[u] == kDiscarded || state[u] == kKilled) guarded = true;
          if (state[u] != kRest) continue;
          if (!any || h.degree(u) > pick_deg) {
            pick = u;
            pick_deg = h.degree(u);
            any = true;
          }
        }
        if (!guarded && any) state[pick] = kKilled;
      }
    }
    std::vector<Vertex> vstar;
    for (Vertex v = 0; v < n; ++v) {
      if (state[v] == kRest) vstar.push_back(v);
    }
    Induced rest = induced(h, vstar);
    rest = detail::compose(rest, detail::trim_highest_degree(rest.graph, target));
    auto pruned = prune_high_degree(rest.graph, detail::caps_for(sc, r + 1));
    rest = detail::compose(rest, std::move(pruned.residual));

    out.trace.attempts = a + 1;
    out.trace.sampled = sample.size();
    out.trace.independent = I.size();
    out.trace.n_out = rest.graph.num_vertices();
    out.trace.cap_repairs = pruned.removed.size();
    if (static_cast<double>(I.size()) < need_i) {
      out.failure = "independent slice below (0.99/e) w n / t";
      continue;
    }
    if (static_cast<double>(rest.graph.num_vertices()) < lower) {
      out.failure = "remaining vertex count below (1 - eps) n / e";
      continue;
    }
    out.ok = true;
    out.trace.ok = true;
    out.failure.clear();
    out.independent = std::move(I);
    out.rest = std::move(rest);
    return out;
  }
  return out;
}

struct StepContract {
  bool independent = false;      // I independent in h
  bool separated = false;        // I and V* disjoint, no edge inside I + V* meets I
  bool size_floor = false;       // |I| >= (0.99/e) w_r n / t_r
  bool window = false;           // (1 - eps) n/e <= |V*| <= n/e
  bool caps = false;             // round r+1 degree caps in h[V*]
  bool all() const { return independent && separated && size_floor && window && caps; }
};

/// Re-derives every postcondition of a successful step from scratch.
inline StepContract check_step(const Hypergraph& h, const NibbleSchedule& sc, double r, const StepOutcome& s) {
  StepContract c;
  const double n = static_cast<double>(h.num_vertices());
  c.independent = is_independent(h, s.independent);
  std::vector<std::uint8_t> where(h.num_vertices(), 0);
  bool disjoint = true;
  for (Vertex v : s.independent) where[v] = 1;
  for (Vertex v : s.rest.to_parent) {
    if (where[v] == 1) disjoint = false;
    where[v] = 2;
  }
  bool no_mixed = true;
  for (EdgeId e = 0; e < h.num_edges() && no_mixed; ++e) {
    auto edge = h.edge(e);
    const bool covered = std::all_of(edge.begin(), edge.end(), [&](Vertex u) { return where[u] != 0; });
    const bool meets = std::any_of(edge.begin(), edge.end(), [&](Vertex u) { return where[u] == 1; });
    if (covered && meets) no_mixed = false;
  }
  c.separated = disjoint && no_mixed;
  c.size_floor = static_cast<double>(s.independent.size()) >= sc.step_size_floor(r, h.num_vertices());
  const double m = static_cast<double>(s.rest.graph.num_vertices());
  c.window = m <= n / std::exp(1.0) + 1e-9 && m >= (1.0 - sc.eps) * n / std::exp(1.0);
  Induced direct = induced(h, s.rest.to_parent);
  c.caps = direct.graph == s.rest.graph && detail::caps_hold(direct.graph, sc, r + 1);
  return c;
}

struct UncrowdedOptions {
  Mode mode = Mode::practical;
  double eps = 0.05;  // practical mode only
  std::size_t retries = 32;
  std::size_t prep_budget = 32;
  /// Called after every step with the hypergraph the step ran on.
  std::function<void(const Hypergraph&, const NibbleSchedule&, double, const StepOutcome&)> on_step;
};

/// Driving parameter used when none is given. Practical mode: the larger of
/// 1.5, max_i t_i and the 90th percentile over vertices of
/// max_i (d_i(v) / C(k-1, i-1))^{1/(i-1)}, so preparation removes only a
/// small fraction of vertices. Paper mode: max(1.5, max_i t_i).
inline double uncrowded_default_T(const Hypergraph& h, Mode mode) {
  double T = std::max(1.5, max_average_degree(h));
  if (mode == Mode::paper || h.num_vertices() == 0 || h.num_edges() == 0) return T;
  const std::size_t k = h.max_edge_size();
  auto prof = degree_profile(h);
  std::vector<double> eff(h.num_vertices(), 0.0);
  for (std::size_t i = 2; i <= k; ++i) {
    const double c = binomial(k - 1, i - 1);
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
      const double d = prof.by_size[i][v];
      if (d > 0) eff[v] = std::max(eff[v], std::pow(d / c, 1.0 / static_cast<double>(i - 1)));
    }
  }
  const std::size_t idx = (eff.size() * 9) / 10;
  std::nth_element(eff.begin(), eff.begin() + static_cast<std::ptrdiff_t>(std::min(idx, eff.size() - 1)), eff.end());
  return std::max(T, eff[std::min(idx, eff.size() - 1)]);
}

/// Lemma-5 style hypothesis t_i^{i-1} <= T^{i-1} (ln T)^{(k-i)/(k-1)} for all i.
inline bool degree_shape_ok(const Hypergraph& h, double T, double c = 1.0) {
  const std::size_t k = h.max_edge_size();
  if (k < 2 || T <= 1) return k < 2;
  for (std::size_t i = 2; i <= k; ++i) {
    const double lhs = average_degree(h, i).t_pow;
    const double rhs = c * std::pow(T, static_cast<double>(i - 1)) *
                       std::pow(std::log(T), static_cast<double>(k - i) / static_cast<double>(k - 1));
    if (lhs > rhs * (1 + 1e-12)) return false;
  }
  return true;
}

/// Semi-random solver for uncrowded hypergraphs: preparation, then
/// nibble rounds until the schedule ends or a step fails, then greedy
/// extension of the union of the slices to a maximal independent set.
/// ln_T is the natural log of the driving parameter; pass 0 for the default.
inline SolveReport uncrowded_solve_ln(const Hypergraph& h, double ln_T, std::uint64_t seed,
                                      const UncrowdedOptions& opt = {}) {
  detail::Stopwatch clock;
  SolveReport rep;
  rep.method = "nibble";
  rep.mode = opt.mode;
  rep.seed = seed;
  if (ln_T <= 0) ln_T = std::log(uncrowded_default_T(h, opt.mode));
  rep.T = std::exp(ln_T);
  const std::size_t k = std::max<std::size_t>(2, h.max_edge_size());
  auto sc = NibbleSchedule::make(k, ln_T, opt.mode, opt.eps);
  rep.params = {{"s", sc.s}, {"r_max", sc.r_max}, {"eps", sc.eps}, {"ln_T", ln_T}};
  if (h.num_edges() == 0) {
    for (Vertex v = 0; v < h.num_vertices(); ++v) rep.witness.push_back(v);
    detail::finish(rep, h, clock);
    return rep;
  }
  rep.params["hypothesis_ok"] = degree_shape_ok(h, rep.T);

  auto prep = subsample_prepare(h, sc, derive_seed(seed, 1), opt.prep_budget);
  rep.params["prep_ok"] = prep.ok;
  rep.params["prep_n"] = prep.sub.graph.num_vertices();
  rep.params["prep_removed_for_caps"] = prep.removed_for_caps;

  std::vector<Vertex> slices;
  std::size_t failed = 0;
  Induced cur = std::move(prep.sub);
  const auto rounds = sc.rounds();
  for (std::size_t j = 0; j < rounds.size(); ++j) {
    if (cur.graph.num_vertices() == 0) break;
    auto step = nibble_step(cur.graph, sc, rounds[j], derive_seed(seed, 2, j), opt.retries);
    rep.trace.push_back(step.trace);
    if (opt.on_step) opt.on_step(cur.graph, sc, rounds[j], step);
    if (!step.ok) {
      ++failed;
      break;
    }
    for (Vertex v : step.independent) slices.push_back(cur.to_parent[v]);
    cur = detail::compose(cur, std::move(step.rest));
  }
  rep.params["rounds_planned"] = rounds.size();
  rep.params["rounds_completed"] = rep.trace.size() - failed;
  rep.params["slice_total"] = slices.size();
  rep.witness = extend_to_maximal(h, slices);
  detail::finish(rep, h, clock);
  return rep;
}

inline SolveReport uncrowded_solve(const Hypergraph& h, double T, std::uint64_t seed,
                                   const UncrowdedOptions& opt = {}) {
  return uncrowded_solve_ln(h, T > 0 ? std::log(T) : 0.0, seed, opt);
}

}  // namespace hypind
