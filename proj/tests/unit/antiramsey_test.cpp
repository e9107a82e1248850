#include <gtest/gtest.h>

#include <cmath>

#include "hypind/antiramsey.hpp"
#include "hypind/cycles.hpp"
#include "test_util.hpp"

using namespace hypind;

namespace {

using Edges = std::vector<std::vector<Vertex>>;

Coloring one_class(std::size_t n, const Edges& edges, std::size_t u = 8, std::size_t ell = 3) {
  ColorClass c;
  c.edges = edges;
  std::map<std::size_t, std::size_t> bounds;
  for (std::size_t s = 2; s <= ell; ++s) bounds[s] = u;
  return Coloring(n, ell, bounds, {c});
}

/// Y counts by brute force over all pairs of listed edges.
bool brute_multicolored(const Coloring& c, const std::vector<Vertex>& X) {
  auto inside = [&](const std::vector<Vertex>& e) {
    return std::all_of(e.begin(), e.end(), [&](Vertex v) { return std::find(X.begin(), X.end(), v) != X.end(); });
  };
  for (const auto& cls : c.classes()) {
    std::size_t cnt = 0;
    for (const auto& e : cls.edges) cnt += inside(e);
    if (cnt >= 2) return false;
  }
  return true;
}

std::size_t brute_f(const Coloring& c) {
  std::size_t best = 0;
  for (std::uint32_t S = 0; S < (1U << c.n()); ++S) {
    std::vector<Vertex> X;
    for (Vertex v = 0; v < c.n(); ++v) {
      if (S >> v & 1U) X.push_back(v);
    }
    if (X.size() > best && brute_multicolored(c, X)) best = X.size();
  }
  return best;
}

}  // namespace

TEST(Validate, MatchingViolation) {
  auto v = validate_coloring(one_class(4, {{0, 1}, {1, 2}}));
  ASSERT_EQ(v.violations.size(), 1u);
  EXPECT_EQ(v.violations[0].condition, 'a');
  EXPECT_EQ(v.violations[0].witness, std::vector<Vertex>{1});
}

TEST(Validate, MixedSizesViolation) {
  auto v = validate_coloring(one_class(6, {{0, 1}, {2, 3, 4}}));
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.violations[0].condition, 'b');
}

TEST(Validate, BoundViolation) {
  auto v = validate_coloring(one_class(4, {{0, 1}, {2, 3}}, 1, 2));
  ASSERT_EQ(v.violations.size(), 1u);
  EXPECT_EQ(v.violations[0].condition, 'c');
}

TEST(Validate, EdgeInTwoClasses) {
  ColorClass a{2, {{0, 1}}}, b{2, {{0, 1}}};
  Coloring c(4, 2, {{2, 2}}, {a, b});
  auto v = validate_coloring(c);
  ASSERT_EQ(v.violations.size(), 1u);
  EXPECT_EQ(v.violations[0].condition, 'd');
}

TEST(MatchingColoring, PerfectMatching) {
  MatchingColoringParams p;
  p.k = 2;
  p.u = 3;
  p.m = 1;
  p.seed = 5;
  auto c = matching_coloring(6, p);
  ASSERT_EQ(c.classes().size(), 1u);
  EXPECT_EQ(c.classes()[0].edges.size(), 3u);
  std::vector<Vertex> all;
  for (const auto& e : c.classes()[0].edges) all.insert(all.end(), e.begin(), e.end());
  std::sort(all.begin(), all.end());
  EXPECT_EQ(all, (std::vector<Vertex>{0, 1, 2, 3, 4, 5}));
  int fresh = 0;
  detail::for_each_subset(6, 2, [&](const std::vector<Vertex>& e) { fresh += !c.color_of(e).has_value(); });
  EXPECT_EQ(fresh, 15 - 3);
  EXPECT_TRUE(validate_coloring(c).ok());
}

TEST(MatchingColoring, ValidForManyParameters) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    MatchingColoringParams p;
    p.k = 2 + s % 2;
    p.u = 1 + s % 7;
    p.seed = s;
    const std::size_t n = 20 + 7 * s;
    auto c = matching_coloring(n, p, 4);
    EXPECT_TRUE(validate_coloring(c).ok());
    const auto m = static_cast<std::size_t>(
        std::ceil(max_c0(p.k) * std::pow(static_cast<double>(n), static_cast<double>(p.k)) / static_cast<double>(p.u) - 1e-9));
    EXPECT_EQ(c.classes().size(), std::max<std::size_t>(1, m));
  }
}

TEST(MatchingColoring, SixtyFourVertices) {
  MatchingColoringParams p;
  p.k = 2;
  p.u = 8;
  p.c0 = 1.0 / (8 * std::exp(2.0) * 2);
  p.seed = 1;
  auto c = matching_coloring(64, p);
  for (const auto& cls : c.classes()) {
    EXPECT_LE(cls.edges.size(), 8u);
    std::set<Vertex> seen;
    for (const auto& e : cls.edges) {
      for (Vertex v : e) EXPECT_TRUE(seen.insert(v).second);
    }
  }
  EXPECT_TRUE(validate_coloring(c).ok());
}

TEST(MatchingColoring, Infeasible) {
  MatchingColoringParams p;
  p.k = 3;
  p.u = 4;
  try {
    matching_coloring(11, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::infeasible_matching);
  }
  p.u = 2;
  p.c0 = 1.0;
  EXPECT_THROW(matching_coloring(11, p), Error);
}

TEST(Conflict, Examples) {
  Coloring fresh(10, 2, {{2, 3}}, {});
  EXPECT_EQ(conflict_hypergraph(fresh, std::vector<Vertex>{0, 1, 2, 3, 4}).graph.num_edges(), 0u);

  auto c = one_class(6, {{0, 1}, {2, 3}});
  auto g = conflict_hypergraph(c, std::vector<Vertex>{0, 1, 2, 3, 5});
  ASSERT_EQ(g.graph.num_edges(), 1u);
  auto e = g.graph.edge(0);
  EXPECT_EQ(g.lift(std::vector<Vertex>(e.begin(), e.end())), (std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(Conflict, EdgeCountMatchesPairScan) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    MatchingColoringParams p;
    p.k = 2 + s % 2;
    p.u = 3;
    p.seed = s;
    auto c = matching_coloring(18, p, 3);
    Rng rng(s);
    auto R = rng.bernoulli_subset(18, 0.6);
    std::set<std::vector<Vertex>> unions;
    for (const auto& cls : c.classes()) {
      for (std::size_t a = 0; a < cls.edges.size(); ++a) {
        for (std::size_t b = a + 1; b < cls.edges.size(); ++b) {
          std::vector<Vertex> u = cls.edges[a];
          u.insert(u.end(), cls.edges[b].begin(), cls.edges[b].end());
          std::sort(u.begin(), u.end());
          if (std::all_of(u.begin(), u.end(), [&](Vertex v) { return std::binary_search(R.begin(), R.end(), v); })) {
            unions.insert(u);
          }
        }
      }
    }
    auto g = conflict_hypergraph(c, R);
    EXPECT_EQ(g.graph.num_edges(), unions.size());
    for (EdgeId e = 0; e < g.graph.num_edges(); ++e) EXPECT_EQ(g.graph.edge_size(e), 2 * p.k);
  }
}

TEST(Collisions, Examples) {
  auto c = one_class(6, {{0, 1}, {2, 3}});
  EXPECT_TRUE(collisions(c, std::vector<Vertex>{}).multicolored);
  EXPECT_TRUE(collisions(c, std::vector<Vertex>{4}).multicolored);
  auto r = collisions(c, std::vector<Vertex>{0, 1, 2, 3});
  EXPECT_FALSE(r.multicolored);
  EXPECT_EQ(r.Y.at(0), 1u);
  EXPECT_EQ(r.colored_inside.at(2), 2u);
}

TEST(Collisions, AgreesWithConflictGraph) {
  std::size_t disagreements = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const std::size_t n = 10 + s % 30;
    Coloring c = s % 2 ? random_bounded_coloring(n, 3, {{2, 4}, {3, 3}}, 4, s)
                       : matching_coloring(n, {.k = 2, .u = 1 + s % 4, .c0 = 0, .m = 0, .seed = s}, 2);
    Rng rng(s + 7);
    auto X = rng.bernoulli_subset(static_cast<std::uint32_t>(n), 0.2 + 0.6 * rng.uniform01());
    const bool a = collisions(c, X).multicolored;
    const bool b = conflict_hypergraph(c, X).graph.num_edges() == 0;
    disagreements += a != b;
    if (s < 200) {
      EXPECT_EQ(a, brute_multicolored(c, X));
    }
  }
  EXPECT_EQ(disagreements, 0u);
}

TEST(Collisions, EventAStatistic) {
  auto c = one_class(10, {{0, 1}, {2, 3}});
  auto r = collisions(c, std::vector<Vertex>{0, 1, 2, 3});
  // c1 x^2 = 16/8 = 2 >= 2 colored edges.
  EXPECT_TRUE(r.event_A(2));
  EXPECT_TRUE(collisions(c, std::vector<Vertex>{0, 1, 2}).event_A(2));  // 1 <= 9/8
  EXPECT_FALSE(collisions(c, std::vector<Vertex>{0, 1}).event_A(2));    // 1 > 4/8
}

TEST(Find, FreshColoringReturnsSample) {
  Coloring c(200, 2, {{2, 50}}, {});
  auto b = make_build(c, Regime::poly);
  auto f = find_multicolored(c, b, 3);
  EXPECT_EQ(f.U.size(), f.R_size);
  EXPECT_TRUE(f.multicolored);
}

TEST(Find, BuildParameters) {
  auto poly = make_build(64, 2, {{2, 8}}, Regime::poly);
  EXPECT_EQ(poly.s, 2u);
  EXPECT_NEAR(poly.p, std::pow(64.0 * 8.0, -1.0 / 3.0), 1e-12);

  const double n = 4096;
  auto lg = make_build(4096, 2, {{2, 4096}}, Regime::log);
  EXPECT_EQ(lg.regime, Regime::log);
  const double omega = std::pow(n * n / n, 1.0 / (2 * 3 * 5));
  EXPECT_NEAR(lg.omega, omega, 1e-12);
  EXPECT_NEAR(lg.p, std::pow(n * n, -1.0 / 3.0) * omega, 1e-12);
  EXPECT_NEAR(lg.T, lg.cstar * lg.p * std::pow(n * n, 1.0 / 3.0), 1e-9);

  auto fallback = make_build(64, 2, {{2, 8}}, Regime::log);
  EXPECT_EQ(fallback.regime, Regime::poly);
  ASSERT_EQ(fallback.warnings.size(), 1u);
  EXPECT_NE(fallback.warnings[0].find("RegimeViolation"), std::string::npos);

  // With u_3 much larger, size 3 maximizes (n^{i-1} u_i)^{1/(2i-1)}.
  auto s3 = make_build(1000, 3, {{2, 1}, {3, 300}}, Regime::poly);
  EXPECT_EQ(s3.s, 3u);
}

TEST(Find, PolyRegimeVersusGreedyAndExact) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    MatchingColoringParams p;
    p.k = 2;
    p.u = 8;
    p.seed = s;
    auto c = matching_coloring(64, p);
    auto b = make_build(c, Regime::poly);
    auto f = find_multicolored(c, b, s);
    EXPECT_TRUE(collisions(c, f.U).multicolored);
    Rng rng(derive_seed(s, 0xf1dd));
    auto R = rng.bernoulli_subset(64, b.p);
    auto G = conflict_hypergraph(c, R);
    EXPECT_GE(f.U.size(), greedy_solve(G.graph).size());
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    MatchingColoringParams p;
    p.k = 2;
    p.u = 3;
    p.seed = s;
    p.m = 4;
    auto c = matching_coloring(14, p);
    auto b = make_build(c, Regime::poly);
    const auto f = exact_f_delta(c);
    for (std::uint64_t r = 0; r < 10; ++r) EXPECT_LE(find_multicolored(c, b, r).U.size(), f);
  }
}

TEST(Find, LogRegimeOutputIsMulticolored) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    MatchingColoringParams p;
    p.k = 2;
    p.u = 512;
    p.seed = s;
    auto c = matching_coloring(1024, p);
    auto b = make_build(c, Regime::log);
    ASSERT_EQ(b.regime, Regime::log);
    auto f = find_multicolored(c, b, s);
    EXPECT_TRUE(collisions(c, f.U).multicolored);
    EXPECT_TRUE(std::includes(f.U.begin(), f.U.end(), f.U.begin(), f.U.end()));
  }
}

TEST(Find, IndependentInConflictGraphMeansMulticolored) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto c = random_bounded_coloring(24, 3, {{2, 3}, {3, 2}}, 6, s);
    Rng rng(s);
    auto R = rng.bernoulli_subset(24, 0.7);
    auto G = conflict_hypergraph(c, R);
    auto I = G.lift(greedy_solve(G.graph).witness);
    EXPECT_TRUE(collisions(c, I).multicolored);
  }
}

TEST(ExactF, Examples) {
  EXPECT_EQ(exact_f_delta(Coloring(5, 2, {{2, 1}}, {})), 5u);
  EXPECT_EQ(exact_f_delta(one_class(4, {{0, 1}, {2, 3}})), 3u);
}

TEST(ExactF, MatchesBruteForceAndDominatesFinder) {
  for (std::uint64_t s = 0; s < 15; ++s) {
    auto c = random_bounded_coloring(12, 3, {{2, 3}, {3, 2}}, 4, s);
    const auto f = exact_f_delta(c);
    EXPECT_EQ(f, brute_f(c));
    std::size_t best = 0;
    for (auto regime : {Regime::poly, Regime::automatic}) {
      auto b = make_build(c, regime);
      for (std::uint64_t r = 0; r < 50; ++r) best = std::max(best, find_multicolored(c, b, r).U.size());
    }
    EXPECT_GE(f, best);
  }
}

TEST(ExactF, FreshEdgesNeverLowerIt) {
  // Removing an edge from a class turns it fresh.
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto c = random_bounded_coloring(10, 2, {{2, 4}}, 3, s);
    const auto f = exact_f_delta(c);
    for (std::size_t i = 0; i < c.classes().size(); ++i) {
      for (std::size_t j = 0; j < c.classes()[i].edges.size(); ++j) {
        auto classes = c.classes();
        classes[i].edges.erase(classes[i].edges.begin() + static_cast<std::ptrdiff_t>(j));
        EXPECT_GE(exact_f_delta(Coloring(c.n(), c.ell(), c.bounds(), classes)), f);
      }
    }
  }
}

TEST(ExactF, Budget) {
  try {
    exact_f_delta(Coloring(30, 2, {{2, 1}}, {}), 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::budget_exceeded);
  }
}

TEST(Estimate, SameUShapes) {
  EstimateOptions o;
  o.reps = 3;
  auto r = estimate_f(512, 2, {{2, 512}}, 4, o);
  EXPECT_EQ(r.build.s, 2u);
  EXPECT_EQ(r.u_eff, 256u);
  EXPECT_NEAR(r.shape_log, std::cbrt(512.0 * std::log(512.0)), 1e-9);
  EXPECT_NEAR(r.shape_poly, std::cbrt(512.0), 1e-9);
  EXPECT_LE(r.min, r.median);
  EXPECT_LE(r.median, r.max);
  EXPECT_EQ(r.rows.size(), 3u);
}

TEST(Estimate, DeterministicAcrossThreads) {
  EstimateOptions a;
  a.reps = 4;
  EstimateOptions b = a;
  b.threads = 3;
  auto x = estimate_f(256, 2, {{2, 256}}, 9, a);
  auto y = estimate_f(256, 2, {{2, 256}}, 9, b);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(x.rows[i].size, y.rows[i].size);
}

TEST(UpperBoundShadow, FractionNonincreasing) {
  const std::size_t n = 4096;
  MatchingColoringParams p;
  p.k = 2;
  p.u = static_cast<std::size_t>(std::llround(std::pow(4096.0, 0.7)));
  p.seed = 2;
  auto c = matching_coloring(n, p);
  double prev = 1.0;
  for (std::size_t x : {8u, 16u, 32u, 64u, 128u}) {
    const double f = multicolored_fraction(c, x, 200, 5);
    EXPECT_LE(f, prev + 1e-12) << "x=" << x;
    prev = f;
  }
  EXPECT_LT(prev, 0.5);
}
