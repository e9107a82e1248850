#include <gtest/gtest.h>

#include <cmath>

#include "hypind/cycles.hpp"
#include "hypind/gen.hpp"
#include "hypind/nibble.hpp"
#include "hypind/oracle.hpp"
#include "test_util.hpp"

using namespace hypind;

namespace {

bool is_maximal(const Hypergraph& h, const std::vector<Vertex>& s) {
  std::vector<char> in(h.num_vertices(), 0);
  for (Vertex v : s) in[v] = 1;
  for (Vertex v = 0; v < h.num_vertices(); ++v) {
    if (in[v]) continue;
    auto t = s;
    t.push_back(v);
    if (is_independent(h, t)) return false;
  }
  return true;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

TEST(Spencer, Examples) {
  Hypergraph empty(10, {});
  SpencerOptions half;
  half.T = 0.5;
  EXPECT_GE(spencer_solve(empty, 1, half).size(), 5u);

  SpencerOptions three;
  three.T = 3;
  auto k4 = spencer_solve(fixture("k4"), 1, three);
  EXPECT_GE(k4.size(), 1u);
  EXPECT_TRUE(k4.verified);

  auto h = gen({Model::uniform_random, 60, 3, {{3, 4.0}}, 2});
  SpencerOptions o;
  o.trials = 200;
  auto r = spencer_solve(h, 3, o);
  EXPECT_GE(r.size(), 4u);
  EXPECT_LE(r.size(), exact_alpha(h).alpha);
  EXPECT_TRUE(is_independent(h, r.witness));
}

TEST(Spencer, DefaultT) {
  EXPECT_DOUBLE_EQ(spencer_default_T(Hypergraph(5, {})), 0.5);
  EXPECT_DOUBLE_EQ(spencer_default_T(fixture("k4")), 3.0);
}

TEST(Spencer, ThreadCountDoesNotChangeResult) {
  auto h = gen({Model::uniform_random, 300, 3, {{2, 3.0}, {3, 4.0}}, 8});
  SpencerOptions one;
  one.trials = 64;
  SpencerOptions four = one;
  four.threads = 4;
  EXPECT_EQ(spencer_solve(h, 9, one).witness, spencer_solve(h, 9, four).witness);
}

TEST(Greedy, Examples) {
  EXPECT_EQ(greedy_solve(Hypergraph(9, {})).size(), 9u);
  EXPECT_EQ(greedy_solve(fixture("k4")).size(), 1u);
  auto p = greedy_solve(fixture("petersen")).size();
  EXPECT_GE(p, 3u);
  EXPECT_LE(p, exact_alpha(fixture("petersen")).alpha);
}

TEST(Greedy, OutputIsMaximalIndependent) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    auto h = testutil::random_mixed(14, 4, 40, s);
    auto r = greedy_solve(h);
    EXPECT_TRUE(is_independent(h, r.witness));
    EXPECT_TRUE(is_maximal(h, r.witness));
  }
}

TEST(Prune, Star) {
  std::vector<std::vector<Vertex>> star;
  for (Vertex v = 1; v <= 9; ++v) star.push_back({0, v});
  auto pr = prune_high_degree(Hypergraph(10, star), {{2, 5.0}});
  EXPECT_EQ(pr.removed, std::vector<Vertex>{0});
  EXPECT_EQ(pr.residual.graph.num_vertices(), 9u);
  EXPECT_EQ(pr.residual.graph.num_edges(), 0u);
}

TEST(Prune, BelowCapsIsIdentity) {
  auto c5 = fixture("c5");
  auto pr = prune_high_degree(c5, {{2, 2.0}});
  EXPECT_TRUE(pr.removed.empty());
  EXPECT_EQ(pr.residual.graph, c5);
}

TEST(Prune, ResidualDegreesWithinCaps) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto h = gen({Model::uniform_random, 300, 3, {{2, 4.0}, {3, 4.0}}, s});
    DegreeCaps caps{{2, 4.0}, {3, 6.0}};
    auto pr = prune_high_degree(h, caps);
    auto prof = degree_profile(pr.residual.graph);
    for (Vertex v = 0; v < pr.residual.graph.num_vertices(); ++v) {
      EXPECT_LE(prof.at(2, v), 4u);
      EXPECT_LE(prof.at(3, v), 6u);
    }
    // Residual equals the induced subgraph on the survivors.
    EXPECT_EQ(induced(h, pr.residual.to_parent).graph, pr.residual.graph);
  }
}

TEST(Schedule, GraphWeightsAreOne) {
  auto sc = NibbleSchedule::make(2, std::log(50.0), Mode::practical);
  for (double r : {0.0, 1.0, 2.5, 7.0}) EXPECT_DOUBLE_EQ(sc.w(r), 1.0);
}

TEST(Schedule, WeightsDecreaseAndTelescope) {
  for (std::size_t k : {3u, 4u, 6u}) {
    auto sc = NibbleSchedule::make(k, 5000.0, Mode::paper);
    const auto rounds = sc.rounds();
    ASSERT_FALSE(rounds.empty());
    double sum = 0;
    for (std::size_t j = 0; j < rounds.size(); ++j) {
      sum += sc.w(rounds[j]);
      if (j > 0) {
        EXPECT_LT(sc.w(rounds[j]), sc.w(rounds[j - 1]));
      }
    }
    const double a = 1.0 / static_cast<double>(k - 1);
    const double R = rounds.back();
    EXPECT_NEAR(sum, std::pow(R + 1, a) - std::pow(sc.s, a), 1e-12 * std::max(1.0, sum));
  }
}

TEST(Schedule, PaperConstants) {
  const double lnT = 2000.0;
  auto sc = NibbleSchedule::make(3, lnT, Mode::paper);
  EXPECT_DOUBLE_EQ(sc.s, 2.0);
  EXPECT_DOUBLE_EQ(sc.r_max, 20.0);
  EXPECT_DOUBLE_EQ(sc.eps, 1.0 / (1e6 * lnT));
  EXPECT_EQ(sc.rounds().size(), 19u);
  const double r = 3;
  EXPECT_NEAR(sc.ln_t(r), lnT - r + (r - sc.s) * std::log1p(sc.eps), 1e-9);
  // cap_i(r) = C(k-1, i-1) r^{(k-i)/(k-1)} t_r^{i-1}; t_r overflows at lnT = 2000.
  auto small = NibbleSchedule::make(3, 20.0, Mode::paper);
  EXPECT_NEAR(small.cap(2, r) / (2.0 * std::sqrt(r) * small.t(r)), 1.0, 1e-12);
  EXPECT_NEAR(small.cap(3, r) / (small.t(r) * small.t(r)), 1.0, 1e-12);
}

TEST(Schedule, PracticalRoundCount) {
  EXPECT_TRUE(NibbleSchedule::make(2, std::log(2.0), Mode::practical).rounds().empty());
  EXPECT_EQ(NibbleSchedule::make(2, std::log(64.0), Mode::practical).rounds().size(), 4u);
}

TEST(Prepare, EdgelessSamplesOneOverE) {
  Hypergraph h(1000, {});
  auto sc = NibbleSchedule::make(2, 1000.0, Mode::paper);
  ASSERT_DOUBLE_EQ(sc.s, 1.0);
  auto p = subsample_prepare(h, sc, 4);
  EXPECT_TRUE(p.ok);
  EXPECT_EQ(p.removed_for_caps, 0u);
  EXPECT_LE(static_cast<double>(p.sub.graph.num_vertices()), 1000 / std::exp(1.0));
  EXPECT_GE(static_cast<double>(p.sub.graph.num_vertices()), 0.75 * 1000 / std::exp(1.0));
}

TEST(Prepare, HugeDegreeVertexRemoved) {
  std::vector<std::vector<Vertex>> edges;
  for (Vertex v = 1; v < 400; ++v) edges.push_back({0, v});
  Hypergraph h(400, edges);
  auto sc = NibbleSchedule::make(2, std::log(4.0), Mode::practical);
  auto p = subsample_prepare(h, sc, 1);
  EXPECT_EQ(std::find(p.sub.to_parent.begin(), p.sub.to_parent.end(), 0u), p.sub.to_parent.end());
}

TEST(Prepare, OutputRespectsCaps) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto h = gen({Model::linear_random, 3000, 3, {{2, 4.0}, {3, 4.0}}, s});
    auto sc = NibbleSchedule::make(3, std::log(6.0), Mode::practical);
    auto p = subsample_prepare(h, sc, s);
    auto prof = degree_profile(p.sub.graph);
    for (std::size_t i = 2; i <= 3; ++i) {
      const double cap = sc.cap(i, sc.s);
      for (Vertex v = 0; v < p.sub.graph.num_vertices(); ++v) EXPECT_LE(prof.at(i, v), cap);
    }
  }
}

TEST(Step, EdgelessMeetsFloor) {
  const auto n = static_cast<std::size_t>(std::llround(std::exp(1.0) * 100));
  Hypergraph h(n, {});
  auto sc = NibbleSchedule::make(2, std::log(10.0), Mode::practical);
  auto st = nibble_step(h, sc, 0, 3);
  ASSERT_TRUE(st.ok);
  EXPECT_GE(static_cast<double>(st.independent.size()), 0.99 / std::exp(1.0) * 1.0 * static_cast<double>(n) / 10.0);
  EXPECT_TRUE(check_step(h, sc, 0, st).all());
}

TEST(Step, ContractOnGirthFiveGraph) {
  auto h = gen({Model::girth5_graph, 5000, 2, {{2, 10.0}}, 6});
  auto sc = NibbleSchedule::make(2, std::log(uncrowded_default_T(h, Mode::practical)), Mode::practical);
  auto p = subsample_prepare(h, sc, 1);
  auto st = nibble_step(p.sub.graph, sc, 0, 2);
  ASSERT_TRUE(st.ok) << st.failure;
  auto c = check_step(p.sub.graph, sc, 0, st);
  EXPECT_TRUE(c.independent);
  EXPECT_TRUE(c.separated);
  EXPECT_TRUE(c.size_floor);
  EXPECT_TRUE(c.window);
  EXPECT_TRUE(c.caps);
  // Any independent set of the rest joins I to an independent set.
  auto more = detail::greedy_grow(st.rest.graph, {});
  auto both = st.rest.lift(more);
  both.insert(both.end(), st.independent.begin(), st.independent.end());
  EXPECT_TRUE(is_independent(p.sub.graph, both));
}

TEST(Uncrowded, Edgeless) {
  EXPECT_EQ(uncrowded_solve(Hypergraph(17, {}), 0, 1).size(), 17u);
}

TEST(Uncrowded, SmallTEqualsGreedy) {
  auto h = gen({Model::girth5_graph, 400, 2, {{2, 2.0}}, 3});
  auto r = uncrowded_solve(h, 2.0, 5);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_EQ(r.witness, greedy_solve(h).witness);
}

TEST(Uncrowded, BeatsSpencerMedianAtSixteen) {
  auto h = gen({Model::girth5_graph, 20000, 2, {{2, 16.0}}, 12});
  std::vector<double> sp;
  for (std::uint64_t s = 0; s < 5; ++s) {
    SpencerOptions o;
    o.trials = 20;
    sp.push_back(static_cast<double>(spencer_solve(h, s, o).size()));
  }
  auto r = uncrowded_solve(h, 0, 7);
  EXPECT_TRUE(r.verified);
  EXPECT_GT(static_cast<double>(r.size()), median(sp));
}

TEST(Uncrowded, ObserverSeesEveryStep) {
  auto h = gen({Model::girth5_graph, 4000, 2, {{2, 12.0}}, 2});
  UncrowdedOptions o;
  std::size_t calls = 0, good = 0;
  o.on_step = [&](const Hypergraph& g, const NibbleSchedule& sc, double r, const StepOutcome& st) {
    ++calls;
    if (st.ok && check_step(g, sc, r, st).all()) ++good;
  };
  auto rep = uncrowded_solve(h, 0, 3, o);
  EXPECT_EQ(calls, rep.trace.size());
  EXPECT_EQ(good, calls);
}

TEST(Pipeline, Examples) {
  PipelineParams p;
  p.T = 3;
  auto k4 = linear_solve(fixture("k4"), 1, p);
  EXPECT_GE(k4.size(), 1u);
  EXPECT_TRUE(k4.verified);
  EXPECT_EQ(linear_solve(Hypergraph(11, {}), 1).size(), 11u);
}

TEST(Pipeline, ResidualIsUncrowded) {
  auto h = gen({Model::mixed_linear, 5000, 3, {{2, 4.0}, {3, 8.0}}, 21});
  PipelineParams p;
  p.T = 8;
  auto r = linear_pipeline(h, 4, p);
  EXPECT_FALSE(r.took_small_T_path);
  EXPECT_GT(r.sampled, 0u);
  const auto& c = r.residual_census;
  EXPECT_EQ(c.two_cycle_count, 0u);
  EXPECT_EQ(c.three_total(), 0u);
  EXPECT_EQ(c.four_all, 0u);
  // Independent recount on the residual.
  EXPECT_TRUE(cycle_census(r.residual).uncrowded());
  EXPECT_TRUE(r.report.verified);
}

TEST(BestOf, DominatedByOracleAndDominatesGreedy) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto h = testutil::random_mixed(10 + s % 9, 2 + s % 3, 40, s);
    BestOptions o;
    o.spencer_trials = 30;
    auto b = best_of(h, s, o);
    EXPECT_TRUE(b.verified);
    EXPECT_TRUE(is_independent(h, b.witness));
    EXPECT_GE(b.size(), greedy_solve(h).size());
    EXPECT_LE(b.size(), testutil::brute_alpha(h));
  }
  EXPECT_GE(best_of(fixture("petersen"), 1).size(), 3u);
}

TEST(Solvers, SoundOnRandomInstances) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto h = testutil::random_mixed(30, 4, 80, s);
    SpencerOptions so;
    so.trials = 20;
    for (const auto& r : {spencer_solve(h, s, so), greedy_solve(h), uncrowded_solve(h, 0, s), linear_solve(h, s)}) {
      EXPECT_TRUE(r.verified) << r.method;
      EXPECT_TRUE(is_independent(h, r.witness)) << r.method;
      EXPECT_TRUE(std::is_sorted(r.witness.begin(), r.witness.end()));
    }
  }
}

TEST(Solvers, SameSeedSameWitness) {
  auto h = gen({Model::girth5_graph, 3000, 2, {{2, 9.0}}, 5});
  EXPECT_EQ(uncrowded_solve(h, 0, 4).witness, uncrowded_solve(h, 0, 4).witness);
  auto m = gen({Model::mixed_linear, 2000, 3, {{2, 3.0}, {3, 5.0}}, 5});
  EXPECT_EQ(linear_solve(m, 4).witness, linear_solve(m, 4).witness);
}

TEST(DefaultC, Values) {
  EXPECT_DOUBLE_EQ(default_c(3, 2, Mode::practical), 1.0);
  const double expect = std::pow(2.0, -9) * std::pow(3.0, -6) * 2.0 * std::pow(10.0, -1.5);
  EXPECT_NEAR(default_c(3, 2, Mode::paper), expect, 1e-18);
}
