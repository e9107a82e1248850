// hypind: command line front end for generation, solving, oracles, cycle
// censuses, anti-Ramsey colorings and sweep studies.
//
// Exit codes: 0 success, 1 usage or input error, 2 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypind/antiramsey.hpp"
#include "hypind/cycles.hpp"
#include "hypind/gen.hpp"
#include "hypind/harness/json_io.hpp"
#include "hypind/harness/study.hpp"
#include "hypind/nhg_io.hpp"
#include "hypind/nibble.hpp"
#include "hypind/oracle.hpp"

using namespace hypind;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerifyFailed = 2;

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

void emit_json(const json& j, const std::string& out) { emit(j.dump(2) + "\n", out); }

Mode parse_mode(const std::string& s) {
  if (s == "practical") return Mode::practical;
  if (s == "paper") return Mode::paper;
  throw Error(Errc::invalid_argument, "mode must be practical or paper");
}

/// "5" applies to every size in `sizes`; "2:5,3:4" sets sizes explicitly.
std::map<std::size_t, double> parse_targets(const std::vector<std::string>& items, const std::vector<std::size_t>& sizes,
                                            std::size_t k) {
  std::map<std::size_t, double> t;
  for (const auto& it : items) {
    auto colon = it.find(':');
    try {
      if (colon == std::string::npos) {
        const double v = std::stod(it);
        if (sizes.empty()) {
          t[k] = v;
        } else {
          for (std::size_t s : sizes) t[s] = v;
        }
      } else {
        t[std::stoul(it.substr(0, colon))] = std::stod(it.substr(colon + 1));
      }
    } catch (const std::logic_error&) {
      throw Error(Errc::invalid_argument, "bad target '" + it + "' (use t or size:t)");
    }
  }
  if (t.empty()) {
    for (std::size_t s : sizes) t[s] = 0;
  }
  return t;
}

/// "n", "n^0.7" or an integer.
std::size_t parse_bound(const std::string& s, std::size_t n) {
  if (s == "n") return n;
  if (s.rfind("n^", 0) == 0) {
    return static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), std::stod(s.substr(2)))));
  }
  return std::stoul(s);
}

struct Options {
  // shared
  std::string in, out, csv, set_file, mode = "practical";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool timing = false;
  // gen
  std::string model = "uniform_random";
  std::size_t n = 0, k = 0;
  std::vector<std::size_t> sizes;
  std::vector<std::string> targets;
  // solve
  std::string algo = "best";
  double T = 0;
  std::size_t trials = 200;
  double eps = 0;
  // exact / cycles
  std::uint64_t budget = 50'000'000;
  bool exhaustive = false;
  int max_len = 4;
  // ar
  std::size_t ell = 2;
  std::string u = "n";
  double c0 = 0, cstar = 1, eps_abs = 0.05;
  std::size_t m = 0, reps = 5;
  std::string regime = "auto";
  std::vector<std::size_t> ns;
  // study
  std::vector<double> t_grid{8, 16, 32, 64};
  std::size_t n_mult = 512;
};

int cmd_gen(const Options& o) {
  GenSpec g;
  g.model = parse_model(o.model);
  g.n = o.n;
  std::size_t kmax = o.k;
  for (std::size_t s : o.sizes) kmax = std::max(kmax, s);
  g.t = parse_targets(o.targets, o.sizes, kmax == 0 ? 2 : kmax);
  for (auto [i, t] : g.t) kmax = std::max(kmax, i);
  g.k = kmax == 0 ? 2 : kmax;
  g.seed = o.seed;
  auto h = gen(g);
  std::ostringstream ss;
  ss << "# model " << to_string(g.model) << " seed " << g.seed << "\n";
  write_nhg(ss, h);
  emit(ss.str(), o.out);
  return kOk;
}

int cmd_solve(const Options& o) {
  auto h = load_nhg(o.in);
  const Mode mode = parse_mode(o.mode);
  SolveReport r;
  if (o.algo == "greedy") {
    r = greedy_solve(h);
  } else if (o.algo == "spencer") {
    SpencerOptions so;
    so.T = o.T;
    so.trials = o.trials;
    so.threads = o.threads;
    r = spencer_solve(h, o.seed, so);
  } else if (o.algo == "nibble") {
    UncrowdedOptions uo;
    uo.mode = mode;
    if (o.eps > 0) uo.eps = o.eps;
    r = uncrowded_solve(h, o.T, o.seed, uo);
  } else if (o.algo == "pipeline") {
    PipelineParams pp;
    pp.T = o.T;
    pp.mode = mode;
    pp.nibble.mode = mode;
    pp.spencer_trials = o.trials;
    pp.threads = o.threads;
    r = linear_solve(h, o.seed, pp);
  } else if (o.algo == "best") {
    BestOptions bo;
    bo.mode = mode;
    bo.spencer_trials = o.trials;
    bo.threads = o.threads;
    r = best_of(h, o.seed, bo);
  } else {
    throw Error(Errc::invalid_argument, "unknown algorithm '" + o.algo + "'");
  }
  emit_json(to_json(r, o.timing), o.out);
  return r.verified ? kOk : kVerifyFailed;
}

int cmd_exact(const Options& o) {
  auto h = load_nhg(o.in);
  auto r = exact_alpha(h, o.budget);
  json j{{"schema_version", kSchemaVersion}, {"n", h.num_vertices()}, {"alpha", r.alpha},
         {"witness", r.witness}, {"exact", r.exact}, {"nodes_explored", r.nodes_explored}};
  emit_json(j, o.out);
  return is_independent(h, r.witness) ? kOk : kVerifyFailed;
}

int cmd_cycles(const Options& o) {
  auto h = load_nhg(o.in);
  CycleCensus c = o.exhaustive ? exhaustive_census(h, o.max_len, o.budget)
                               : cycle_census(h, {.max_len = o.max_len, .witnesses = false, .stop_at_first = false});
  json j = to_json(c);
  j["schema_version"] = kSchemaVersion;
  j["method"] = o.exhaustive ? "exhaustive" : "census";
  emit_json(j, o.out);
  return kOk;
}

int cmd_verify(const Options& o) {
  auto h = load_nhg(o.in);
  auto s = parse_vertex_set(read_file(o.set_file));
  const bool ok = is_independent(h, s);
  json j{{"schema_version", kSchemaVersion}, {"size", detail::sorted_unique(s).size()}, {"independent", ok}};
  emit_json(j, o.out);
  return ok ? kOk : kVerifyFailed;
}

int cmd_ar_color(const Options& o) {
  MatchingColoringParams mp;
  mp.k = o.k == 0 ? 2 : o.k;
  mp.u = parse_bound(o.u, o.n);
  mp.c0 = o.c0;
  mp.m = o.m;
  mp.seed = o.seed;
  auto c = matching_coloring(o.n, mp, o.ell);
  emit_json(to_json(c), o.out);
  return kOk;
}

json validation_json(const ValidationReport& v) {
  json vs = json::array();
  for (const auto& x : v.violations) {
    vs.push_back({{"condition", std::string(1, x.condition)}, {"color", x.color}, {"witness", x.witness},
                  {"message", x.message}});
  }
  return {{"schema_version", kSchemaVersion}, {"ok", v.ok()}, {"violations", vs}};
}

int cmd_ar_validate(const Options& o) {
  auto v = validate_coloring(load_coloring(o.in));
  emit_json(validation_json(v), o.out);
  return v.ok() ? kOk : kVerifyFailed;
}

int cmd_ar_find(const Options& o) {
  auto c = load_coloring(o.in);
  auto b = make_build(c, parse_regime(o.regime), o.cstar, o.eps_abs);
  for (const auto& w : b.warnings) std::cerr << "warning: " << w << "\n";
  auto f = find_multicolored(c, b, o.seed);
  json j{{"schema_version", kSchemaVersion},
         {"method", "find_multicolored"},
         {"seed", o.seed},
         {"n", c.n()},
         {"ell", c.ell()},
         {"regime", to_string(f.regime)},
         {"s", b.s},
         {"p", b.p},
         {"omega", b.omega},
         {"T", b.T},
         {"cstar", b.cstar},
         {"cond3", b.cond3_ok},
         {"R_size", f.R_size},
         {"conflict_edges", f.conflict_edges},
         {"two_cycles", f.two_cycles},
         {"deleted_for_two_cycles", f.deleted_for_two_cycles},
         {"cond_T_ok", f.cond_T_ok},
         {"solver", f.solver},
         {"size", f.U.size()},
         {"U", f.U},
         {"multicolored", f.multicolored},
         {"warnings", f.warnings}};
  emit_json(j, o.out);
  return f.multicolored ? kOk : kVerifyFailed;
}

int cmd_ar_exactf(const Options& o) {
  auto c = load_coloring(o.in);
  json j{{"schema_version", kSchemaVersion}, {"n", c.n()}, {"f", exact_f_delta(c, o.budget)}};
  emit_json(j, o.out);
  return kOk;
}

int cmd_ar_sweep(const Options& o) {
  std::ostringstream ss;
  ss << "n,ell,s,u,u_eff,regime,p,T,rep,size,R_size,shape_poly,shape_log\n";
  for (std::size_t n : o.ns) {
    EstimateOptions eo;
    eo.regime = parse_regime(o.regime);
    eo.reps = o.reps;
    eo.cstar = o.cstar;
    eo.eps_abs = o.eps_abs;
    eo.c0 = o.c0;
    eo.threads = o.threads;
    const std::size_t s = o.k == 0 ? 2 : o.k;
    const std::size_t u = parse_bound(o.u, n);
    auto r = estimate_f(n, std::max(o.ell, s), {{s, u}}, derive_seed(o.seed, n), eo);
    for (const auto& w : r.build.warnings) std::cerr << "warning: n=" << n << ": " << w << "\n";
    for (const auto& row : r.rows) {
      ss << n << ',' << r.ell << ',' << r.build.s << ',' << u << ',' << r.u_eff << ',' << to_string(r.build.regime)
         << ',' << format_double(r.build.p) << ',' << format_double(r.build.T) << ',' << row.rep << ',' << row.size
         << ',' << row.R_size << ',' << format_double(r.shape_poly) << ',' << format_double(r.shape_log) << '\n';
    }
  }
  emit(ss.str(), o.csv.empty() ? o.out : o.csv);
  return kOk;
}

int cmd_study(const Options& o, StudyKind kind) {
  StudyConfig cfg;
  cfg.kind = kind;
  cfg.k = o.k == 0 ? 2 : o.k;
  cfg.t_grid = o.t_grid;
  cfg.n_mult = o.n_mult;
  cfg.reps = o.reps;
  cfg.seed = o.seed;
  cfg.mode = parse_mode(o.mode);
  cfg.spencer_trials = o.trials;
  cfg.threads = o.threads;
  cfg.timing = o.timing;
  auto rows = run_study(cfg);
  std::ostringstream ss;
  write_csv(ss, rows);
  emit(ss.str(), o.csv.empty() ? o.out : o.csv);
  for (const auto& r : rows) {
    if (!r.verified) return kVerifyFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Independent sets in non-uniform hypergraphs and anti-Ramsey colorings"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "Master seed");
    c->add_option("--out", o.out, "Output file (default stdout)");
  };

  auto* gen = app.add_subcommand("gen", "Generate an instance as .nhg");
  add_common(gen);
  gen->add_option("--model", o.model, "complete|uniform_random|linear_random|uncrowded_random|girth5_graph|mixed_linear");
  gen->add_option("--n", o.n, "Vertices")->required();
  gen->add_option("--k", o.k, "Largest edge size");
  gen->add_option("--sizes", o.sizes, "Edge sizes")->delimiter(',');
  gen->add_option("--t", o.targets, "Target t_i: a value for all sizes, or size:t pairs")->delimiter(',');

  auto* solve = app.add_subcommand("solve", "Find an independent set");
  add_common(solve);
  solve->add_option("--in", o.in, "Instance (.nhg)")->required();
  solve->add_option("--algo", o.algo, "spencer|greedy|nibble|pipeline|best");
  solve->add_option("--T", o.T, "Driving parameter (0: solver default)");
  solve->add_option("--trials", o.trials, "Random deletion trials");
  solve->add_option("--eps", o.eps, "Practical-mode window epsilon");
  solve->add_option("--mode", o.mode, "practical|paper");
  solve->add_option("--threads", o.threads, "Worker threads (0: hardware)");
  solve->add_flag("--timing", o.timing, "Record wall time in elapsed_ms");

  auto* exact = app.add_subcommand("exact", "Exact independence number");
  add_common(exact);
  exact->add_option("--in", o.in, "Instance (.nhg)")->required();
  exact->add_option("--budget", o.budget, "Search node budget");

  auto* cycles = app.add_subcommand("cycles", "Count 2-, 3- and 4-cycles");
  add_common(cycles);
  cycles->add_option("--in", o.in, "Instance (.nhg)")->required();
  cycles->add_option("--max-len", o.max_len, "Longest cycle length (2..4)");
  cycles->add_flag("--exhaustive", o.exhaustive, "Use the brute-force enumerator");
  cycles->add_option("--budget", o.budget, "Tuple budget for --exhaustive");

  auto* verify = app.add_subcommand("verify", "Check that a vertex set is independent");
  add_common(verify);
  verify->add_option("--in", o.in, "Instance (.nhg)")->required();
  verify->add_option("--set", o.set_file, "Vertex set: JSON array, report JSON or integers")->required();

  auto* ar = app.add_subcommand("ar", "Anti-Ramsey colorings");
  ar->require_subcommand(1);
  auto* color = ar->add_subcommand("color", "Random matching coloring as JSON");
  add_common(color);
  color->add_option("--n", o.n, "Vertices")->required();
  color->add_option("--k", o.k, "Edge size of the matchings");
  color->add_option("--u", o.u, "Matching size: integer, n or n^x");
  color->add_option("--c0", o.c0, "Constant c0 (0: maximal)");
  color->add_option("--m", o.m, "Number of matchings (0: derived)");
  color->add_option("--ell", o.ell, "Largest edge size of the host");
  auto* validate = ar->add_subcommand("validate", "Check a coloring");
  add_common(validate);
  validate->add_option("--in", o.in, "Coloring JSON")->required();
  auto* find = ar->add_subcommand("find", "Totally multicolored set");
  add_common(find);
  find->add_option("--in", o.in, "Coloring JSON")->required();
  find->add_option("--regime", o.regime, "poly|log|auto");
  find->add_option("--cstar", o.cstar, "Constant in the driving parameter");
  find->add_option("--eps-abs", o.eps_abs, "Exponent slack for the log regime");
  auto* exactf = ar->add_subcommand("exactf", "Exact largest multicolored set (small n)");
  add_common(exactf);
  exactf->add_option("--in", o.in, "Coloring JSON")->required();
  exactf->add_option("--budget", o.budget, "Subset budget");
  auto* sweep = ar->add_subcommand("sweep", "Estimate f over a grid of n (CSV)");
  add_common(sweep);
  sweep->add_option("--n", o.ns, "Grid of n")->delimiter(',')->required();
  sweep->add_option("--k", o.k, "Edge size of the matchings");
  sweep->add_option("--u", o.u, "Bound: integer, n or n^x");
  sweep->add_option("--ell", o.ell, "Largest edge size of the host");
  sweep->add_option("--regime", o.regime, "poly|log|auto");
  sweep->add_option("--reps", o.reps, "Rounds per n");
  sweep->add_option("--cstar", o.cstar, "Constant in the driving parameter");
  sweep->add_option("--eps-abs", o.eps_abs, "Exponent slack for the log regime");
  sweep->add_option("--c0", o.c0, "Constant c0 (0: maximal)");
  sweep->add_option("--threads", o.threads, "Worker threads");
  sweep->add_option("--csv", o.csv, "CSV output file");

  auto* study = app.add_subcommand("study", "Sweep studies (CSV)");
  study->require_subcommand(1);
  auto* scaling = study->add_subcommand("scaling", "Spencer vs semi-random over a t grid");
  auto* paired = study->add_subcommand("paired", "All solvers on the same instances");
  for (auto* c : {scaling, paired}) {
    add_common(c);
    c->add_option("--k", o.k, "Edge size (2: girth-5 graphs, else mixed linear)");
    c->add_option("--t", o.t_grid, "Grid of t")->delimiter(',');
    c->add_option("--n-mult", o.n_mult, "n = n_mult * t");
    c->add_option("--reps", o.reps, "Instances per grid point");
    c->add_option("--trials", o.trials, "Random deletion trials");
    c->add_option("--mode", o.mode, "practical|paper");
    c->add_option("--threads", o.threads, "Worker threads");
    c->add_option("--csv", o.csv, "CSV output file");
    c->add_flag("--timing", o.timing, "Record wall time in elapsed_ms");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen) return cmd_gen(o);
    if (*solve) return cmd_solve(o);
    if (*exact) return cmd_exact(o);
    if (*cycles) return cmd_cycles(o);
    if (*verify) return cmd_verify(o);
    if (*color) return cmd_ar_color(o);
    if (*validate) return cmd_ar_validate(o);
    if (*find) return cmd_ar_find(o);
    if (*exactf) return cmd_ar_exactf(o);
    if (*sweep) return cmd_ar_sweep(o);
    if (*scaling) return cmd_study(o, StudyKind::scaling);
    if (*paired) return cmd_study(o, StudyKind::paired);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
