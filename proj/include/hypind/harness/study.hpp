#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hypind/gen.hpp"
#include "hypind/nibble.hpp"
#include "hypind/parallel.hpp"
#include "hypind/random.hpp"

namespace hypind {

enum class StudyKind { scaling, paired };

struct StudyConfig {
  StudyKind kind = StudyKind::scaling;
  std::size_t k = 2;
  std::vector<double> t_grid{8, 16, 32, 64};
  std::size_t n_mult = 512;
  std::size_t reps = 5;
  std::uint64_t seed = 0;
  Mode mode = Mode::practical;
  std::size_t spencer_trials = 200;
  unsigned threads = 1;
  bool timing = false;
};

struct StudyRow {
  std::string model;
  std::size_t n = 0;
  std::size_t k = 0;
  double t_target = 0;
  double t_achieved = 0;
  std::uint64_t seed = 0;
  std::string method;
  std::size_t size = 0;
  double comp_spencer = 0;  // n/(4t)
  double comp_log = 0;      // (n/t) (ln t)^{1/(k-1)}
  double elapsed_ms = 0;
  bool feasible = true;
  bool verified = true;
};

inline double comparator_spencer(std::size_t n, double t) { return static_cast<double>(n) / (4.0 * t); }

inline double comparator_log(std::size_t n, std::size_t k, double t) {
  return static_cast<double>(n) / t * std::pow(std::log(t), 1.0 / static_cast<double>(k - 1));
}

/// Instance seed for grid point t and replicate `rep`; independent of the
/// rest of the grid.
inline std::uint64_t study_instance_seed(std::uint64_t master, double t, std::size_t rep) {
  return derive_seed(master, static_cast<std::uint64_t>(std::llround(t * 1000.0)), rep);
}

/// Girth-5 graph for k = 2, mixed linear with every t_i = t otherwise.
inline GenSpec study_instance(const StudyConfig& cfg, double t, std::size_t rep) {
  GenSpec g;
  g.k = cfg.k;
  g.n = static_cast<std::size_t>(std::llround(static_cast<double>(cfg.n_mult) * t));
  g.seed = study_instance_seed(cfg.seed, t, rep);
  if (cfg.k == 2) {
    g.model = Model::girth5_graph;
    g.t = {{2, t}};
  } else {
    g.model = Model::mixed_linear;
    for (std::size_t i = 2; i <= cfg.k; ++i) g.t[i] = t;
  }
  return g;
}

/// Runs every method of the study on one instance.
inline std::vector<StudyRow> study_instance_rows(const StudyConfig& cfg, double t, std::size_t rep) {
  const GenSpec spec = study_instance(cfg, t, rep);
  auto gr = try_gen(spec);
  const Hypergraph& h = gr.graph;
  double t_ach = 0;
  for (auto [i, a] : gr.achieved) t_ach = std::max(t_ach, a);

  std::vector<SolveReport> reps;
  SpencerOptions so;
  so.trials = cfg.spencer_trials;
  reps.push_back(spencer_solve(h, derive_seed(spec.seed, 1), so));
  if (cfg.k == 2) {
    UncrowdedOptions uo;
    uo.mode = cfg.mode;
    auto r = uncrowded_solve(h, 0, derive_seed(spec.seed, 2), uo);
    r.method = "nibble";
    reps.push_back(std::move(r));
  } else {
    PipelineParams pp;
    pp.mode = cfg.mode;
    pp.nibble.mode = cfg.mode;
    pp.spencer_trials = cfg.spencer_trials;
    reps.push_back(linear_solve(h, derive_seed(spec.seed, 2), pp));
  }
  if (cfg.kind == StudyKind::paired) {
    reps.push_back(greedy_solve(h));
    BestOptions bo;
    bo.mode = cfg.mode;
    bo.spencer_trials = cfg.spencer_trials;
    reps.push_back(best_of(h, derive_seed(spec.seed, 3), bo));
    reps.back().method = "best";
  }

  std::vector<StudyRow> rows;
  for (const auto& r : reps) {
    StudyRow row;
    row.model = to_string(spec.model);
    row.n = spec.n;
    row.k = cfg.k;
    row.t_target = t;
    row.t_achieved = t_ach;
    row.seed = spec.seed;
    row.method = r.method;
    row.size = r.size();
    row.comp_spencer = comparator_spencer(spec.n, t);
    row.comp_log = comparator_log(spec.n, cfg.k, t);
    row.elapsed_ms = cfg.timing ? r.elapsed_ms : 0.0;
    row.feasible = gr.feasible;
    row.verified = r.verified;
    rows.push_back(std::move(row));
  }
  return rows;
}

/// All grid points times `reps` instances. Instances run concurrently; rows
/// come back sorted by (t_target, seed, method).
inline std::vector<StudyRow> run_study(const StudyConfig& cfg) {
  if (cfg.k < 2) throw Error(Errc::invalid_argument, "k must be >= 2");
  for (double t : cfg.t_grid) {
    if (!(t > 1)) throw Error(Errc::invalid_argument, "grid values must exceed 1");
  }
  std::vector<std::pair<double, std::size_t>> jobs;
  for (double t : cfg.t_grid) {
    for (std::size_t r = 0; r < cfg.reps; ++r) jobs.emplace_back(t, r);
  }
  std::vector<std::vector<StudyRow>> out(jobs.size());
  parallel_for(jobs.size(), cfg.threads,
               [&](std::size_t j) { out[j] = study_instance_rows(cfg, jobs[j].first, jobs[j].second); });
  std::vector<StudyRow> rows;
  for (auto& v : out) rows.insert(rows.end(), v.begin(), v.end());
  std::sort(rows.begin(), rows.end(), [](const StudyRow& a, const StudyRow& b) {
    return std::tie(a.t_target, a.seed, a.method) < std::tie(b.t_target, b.seed, b.method);
  });
  return rows;
}

inline constexpr const char* kCsvHeader =
    "model,n,k,t_target,t_achieved,seed,method,size,comp_spencer,comp_log,elapsed_ms";

inline std::string format_double(double v) {
  std::ostringstream ss;
  ss << std::setprecision(10) << v;
  return ss.str();
}

/// Rows from infeasible instances carry the method suffix "!infeasible".
inline void write_csv(std::ostream& os, const std::vector<StudyRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.model << ',' << r.n << ',' << r.k << ',' << format_double(r.t_target) << ','
       << format_double(r.t_achieved) << ',' << r.seed << ',' << r.method << (r.feasible ? "" : "!infeasible")
       << ',' << r.size << ',' << format_double(r.comp_spencer) << ',' << format_double(r.comp_log) << ','
       << format_double(r.elapsed_ms) << '\n';
  }
}

/// Median of size/(n/t) for `method`, per grid point.
inline std::map<double, double> median_normalized(const std::vector<StudyRow>& rows, const std::string& method) {
  std::map<double, std::vector<double>> by_t;
  for (const auto& r : rows) {
    if (r.method == method) by_t[r.t_target].push_back(static_cast<double>(r.size) * r.t_target / static_cast<double>(r.n));
  }
  std::map<double, double> out;
  for (auto& [t, v] : by_t) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    out[t] = v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  }
  return out;
}

}  // namespace hypind
