#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hypind/antiramsey/coloring.hpp"
#include "hypind/antiramsey/conflict.hpp"
#include "hypind/cycles.hpp"
#include "hypind/nibble.hpp"
#include "hypind/parallel.hpp"
#include "hypind/random.hpp"

namespace hypind {

/// poly: sampling without the omega boost, random deletion on G[R].
/// log: omega-boosted sampling, 2-cycle deletion, then the linear pipeline.
enum class Regime { poly, log, automatic };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::poly: return "poly";
    case Regime::log: return "log";
    case Regime::automatic: return "auto";
  }
  return "?";
}

inline Regime parse_regime(const std::string& s) {
  if (s == "poly") return Regime::poly;
  if (s == "log") return Regime::log;
  if (s == "auto") return Regime::automatic;
  throw Error(Errc::invalid_argument, "unknown regime '" + s + "' (poly|log|auto)");
}

struct ConflictBuild {
  Regime regime = Regime::poly;
  std::size_t n = 0;
  std::size_t ell = 2;
  std::size_t s = 2;
  double u_s = 1;
  double p = 1;
  double omega = 1;
  /// Driving parameter for the log regime; unused in the poly regime.
  double T = 0;
  double cstar = 1;
  double eps_abs = 0.05;
  bool cond3_ok = false;
  std::vector<std::string> warnings;
};

namespace detail {

/// Arg-max over i of (n^{i-1} u_i / L)^{1/(2i-1)}, smallest i on ties.
inline std::size_t argmax_size(std::size_t n, const std::map<std::size_t, std::size_t>& u, double L) {
  std::size_t best = 0;
  double best_v = -1;
  for (auto [i, ui] : u) {
    if (i < 2 || ui == 0) continue;
    const double v = (static_cast<double>(i - 1) * std::log(static_cast<double>(n)) +
                      std::log(static_cast<double>(ui)) - std::log(L)) /
                     static_cast<double>(2 * i - 1);
    if (v > best_v + 1e-12) {
      best_v = v;
      best = i;
    }
  }
  return best;
}

}  // namespace detail

/// Sampling plan for the bounds `u` (sizes without a positive bound carry no
/// repeated colors). Requesting the log regime when u_s < n^{1/2+eps_abs}
/// falls back to the poly regime and records a RegimeViolation warning;
/// `automatic` picks log exactly when that condition holds.
inline ConflictBuild make_build(std::size_t n, std::size_t ell, const std::map<std::size_t, std::size_t>& u,
                                Regime regime = Regime::automatic, double cstar = 1.0, double eps_abs = 0.05) {
  if (n < 2) throw Error(Errc::invalid_argument, "n must be >= 2");
  if (!(eps_abs > 0)) throw Error(Errc::invalid_argument, "eps_abs must be > 0");
  ConflictBuild b;
  b.n = n;
  b.ell = ell;
  b.cstar = cstar;
  b.eps_abs = eps_abs;
  const double N = static_cast<double>(n);
  const double ln_n = std::log(N);
  const std::size_t s_poly = detail::argmax_size(n, u, 1.0);
  if (s_poly == 0) {
    // No size can repeat a color: everything is multicolored.
    b.regime = Regime::poly;
    b.p = 1;
    b.s = 2;
    b.u_s = 0;
    return b;
  }
  const std::size_t s_log = detail::argmax_size(n, u, ln_n);
  const double us_log = static_cast<double>(u.at(s_log));
  b.cond3_ok = us_log >= std::pow(N, 0.5 + eps_abs);
  Regime use = regime;
  if (use == Regime::automatic) use = b.cond3_ok ? Regime::log : Regime::poly;
  if (use == Regime::log && !b.cond3_ok) {
    b.warnings.push_back(std::string(to_string(Errc::regime_violation)) + ": u_s = " + std::to_string(u.at(s_log)) +
                         " < n^(1/2+eps); using the poly regime");
    use = Regime::poly;
  }
  b.regime = use;
  b.s = use == Regime::log ? s_log : s_poly;
  b.u_s = static_cast<double>(u.at(b.s));
  const double sd = static_cast<double>(b.s);
  const double base = std::pow(std::pow(N, sd - 1) * b.u_s, 1.0 / (2 * sd - 1));
  b.p = std::min(1.0, 1.0 / base);
  if (use == Regime::log) {
    const double l = static_cast<double>(ell);
    b.omega = std::pow(b.u_s * b.u_s / N, 1.0 / (2 * (2 * sd - 1) * (2 * l + 1)));
    b.p = std::min(1.0, b.omega / base);
    b.T = cstar * b.p * base * std::pow(ln_n, (2 * sd - 2 * l) / ((2 * sd - 1) * (2 * l - 1)));
  }
  return b;
}

inline ConflictBuild make_build(const Coloring& c, Regime regime = Regime::automatic, double cstar = 1.0,
                                double eps_abs = 0.05) {
  return make_build(c.n(), c.ell(), c.bounds(), regime, cstar, eps_abs);
}

struct FindReport {
  std::vector<Vertex> U;
  Regime regime = Regime::poly;
  std::size_t R_size = 0;
  std::size_t conflict_edges = 0;
  std::size_t two_cycles = 0;
  std::size_t deleted_for_two_cycles = 0;
  /// Average-degree condition t_{2i}^{2i-1} <= T^{2i-1} (ln T)^{(2l-2i)/(2l-1)}
  /// on the graph handed to the solver (log regime only).
  bool cond_T_ok = true;
  double T_used = 0;
  std::string solver;
  bool multicolored = false;
  std::vector<std::string> warnings;
};

/// Draws R with the build's p, forms G[R] and returns a totally
/// multicolored U inside R: an independent set of G[R] (log regime: of
/// G[R] minus a hitting set of its 2-cycles, solved by the linear pipeline;
/// poly regime: random deletion). The greedy set of the same graph competes
/// and the larger wins. U is re-checked with collisions.
inline FindReport find_multicolored(const Coloring& c, const ConflictBuild& b, std::uint64_t seed) {
  FindReport rep;
  rep.regime = b.regime;
  rep.warnings = b.warnings;
  Rng rng(derive_seed(seed, 0xf1dd));
  auto R = rng.bernoulli_subset(static_cast<std::uint32_t>(c.n()), b.p);
  rep.R_size = R.size();
  Induced G = conflict_hypergraph(c, R);
  rep.conflict_edges = G.graph.num_edges();

  std::vector<Vertex> local;
  if (G.graph.num_edges() == 0) {
    local.resize(G.graph.num_vertices());
    for (Vertex v = 0; v < local.size(); ++v) local[v] = v;
    rep.solver = "none";
  } else if (b.regime == Regime::log) {
    auto cen = cycle_census(G.graph, {.max_len = 2, .witnesses = true, .stop_at_first = false});
    rep.two_cycles = cen.two_cycle_count;
    auto hit = detail::hit_cycles(G.graph.num_vertices(), cycle_vertex_sets(G.graph, cen.two_witnesses));
    rep.deleted_for_two_cycles = hit.size();
    Induced lin = induced_without(G.graph, hit);
    const Hypergraph& g = lin.graph;
    const double T = std::max(1.5, b.T);
    rep.T_used = T;
    const std::size_t k = 2 * b.ell;
    for (std::size_t i = 2; 2 * i <= k; ++i) {
      const double lhs = average_degree(g, 2 * i).t_pow;
      const double rhs = std::pow(T, static_cast<double>(2 * i - 1)) *
                         std::pow(std::log(T), static_cast<double>(k - 2 * i) / static_cast<double>(k - 1));
      if (lhs > rhs * (1 + 1e-12)) rep.cond_T_ok = false;
    }
    PipelineParams pp;
    pp.T = T;
    auto sol = linear_solve(g, derive_seed(seed, 0x11ea), pp);
    auto in_G = lin.lift(sol.witness);
    local = extend_to_maximal(G.graph, in_G);
    rep.solver = "pipeline";
  } else {
    auto sp = spencer_solve(G.graph, derive_seed(seed, 0x5bec));
    local = extend_to_maximal(G.graph, sp.witness);
    rep.T_used = sp.T;
    rep.solver = "spencer";
  }
  auto g = detail::greedy_grow(G.graph, {});
  if (detail::better(g, local)) {
    local = std::move(g);
    rep.solver += "+greedy";
  }
  rep.U = G.lift(local);
  std::sort(rep.U.begin(), rep.U.end());
  rep.multicolored = collisions(c, rep.U).multicolored;
  if (!rep.multicolored) throw std::logic_error("find_multicolored produced a set with a repeated color");
  return rep;
}

/// Largest totally multicolored vertex set by exhaustive subset search.
/// Throws BudgetExceeded when 2^n exceeds `budget`.
inline std::size_t exact_f_delta(const Coloring& c, std::uint64_t budget = 1ULL << 24) {
  const std::size_t n = c.n();
  if (n >= 63 || (1ULL << n) > budget) {
    throw Error(Errc::budget_exceeded, "2^" + std::to_string(n) + " subsets exceed the budget");
  }
  // Each colliding pair is a forbidden vertex mask.
  std::vector<std::uint64_t> forbidden;
  for (const auto& cls : c.classes()) {
    std::vector<std::uint64_t> masks;
    for (const auto& e : cls.edges) {
      std::uint64_t m = 0;
      for (Vertex v : e) m |= 1ULL << v;
      masks.push_back(m);
    }
    for (std::size_t a = 0; a < masks.size(); ++a) {
      for (std::size_t b = a + 1; b < masks.size(); ++b) forbidden.push_back(masks[a] | masks[b]);
    }
  }
  // An edge listed twice in one class yields its own mask, matching the
  // pair count collisions reports for it.
  std::sort(forbidden.begin(), forbidden.end());
  forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
  std::size_t best = 0;
  for (std::uint64_t S = 0; S < (1ULL << n); ++S) {
    const auto sz = static_cast<std::size_t>(std::popcount(S));
    if (sz <= best) continue;
    bool ok = true;
    for (std::uint64_t f : forbidden) {
      if ((S & f) == f) {
        ok = false;
        break;
      }
    }
    if (ok) best = sz;
  }
  return best;
}

struct EstimateRow {
  std::size_t rep = 0;
  std::size_t size = 0;
  std::size_t R_size = 0;
  std::size_t classes = 0;
};

struct EstimateResult {
  std::size_t n = 0;
  std::size_t ell = 2;
  ConflictBuild build;
  std::size_t u_eff = 0;
  std::vector<EstimateRow> rows;
  double min = 0, median = 0, max = 0;
  double shape_poly = 0;  // (n^s/u_s)^{1/(2s-1)}
  double shape_log = 0;   // ((n^s/u_s) ln n)^{1/(2s-1)}
};

inline double median_of(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

struct EstimateOptions {
  Regime regime = Regime::automatic;
  std::size_t reps = 5;
  double cstar = 1.0;
  double eps_abs = 0.05;
  double c0 = 0;  // 0: maximal
  unsigned threads = 1;
};

/// Repeated (matching coloring, find) rounds for the bounds `u`. The
/// adversary colors only the arg-max size s; its matchings hold
/// min(u_s, floor(n/s)) edges so that they fit.
inline EstimateResult estimate_f(std::size_t n, std::size_t ell, const std::map<std::size_t, std::size_t>& u,
                                 std::uint64_t seed, const EstimateOptions& opt = {}) {
  EstimateResult out;
  out.n = n;
  out.ell = ell;
  out.build = make_build(n, ell, u, opt.regime, opt.cstar, opt.eps_abs);
  const std::size_t s = out.build.s;
  const double us = std::max(1.0, out.build.u_s);
  out.u_eff = std::min<std::size_t>(static_cast<std::size_t>(us), n / s);
  const double N = static_cast<double>(n);
  const double sd = static_cast<double>(s);
  out.shape_poly = std::pow(std::pow(N, sd) / us, 1 / (2 * sd - 1));
  out.shape_log = std::pow(std::pow(N, sd) / us * std::log(N), 1 / (2 * sd - 1));
  out.rows.resize(opt.reps);
  parallel_for(opt.reps, opt.threads, [&](std::size_t r) {
    MatchingColoringParams mp;
    mp.k = s;
    mp.u = out.u_eff;
    mp.c0 = opt.c0;
    mp.seed = derive_seed(seed, 0xe5, r);
    Coloring col = matching_coloring(n, mp, ell);
    auto f = find_multicolored(col, out.build, derive_seed(seed, 0xf0, r));
    out.rows[r] = {r, f.U.size(), f.R_size, col.classes().size()};
  });
  std::vector<double> sizes;
  for (const auto& row : out.rows) sizes.push_back(static_cast<double>(row.size));
  if (!sizes.empty()) {
    out.min = *std::min_element(sizes.begin(), sizes.end());
    out.max = *std::max_element(sizes.begin(), sizes.end());
    out.median = median_of(sizes);
  }
  return out;
}

/// Fraction of `samples` uniform x-subsets that are totally multicolored.
inline double multicolored_fraction(const Coloring& c, std::size_t x, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) return 0;
  std::size_t good = 0;
  for (std::size_t j = 0; j < samples; ++j) {
    Rng rng(derive_seed(seed, x, j));
    auto X = rng.distinct(static_cast<std::uint32_t>(c.n()), static_cast<std::uint32_t>(x));
    if (collisions(c, X).multicolored) ++good;
  }
  return static_cast<double>(good) / static_cast<double>(samples);
}

}  // namespace hypind
