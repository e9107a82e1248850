#include <gtest/gtest.h>

#include "hypind/gen.hpp"
#include "hypind/oracle.hpp"
#include "test_util.hpp"

using namespace hypind;

TEST(ExactAlpha, Fixtures) {
  EXPECT_EQ(exact_alpha(fixture("c5")).alpha, 2u);
  EXPECT_EQ(exact_alpha(fixture("complete3u5")).alpha, 2u);
  EXPECT_EQ(exact_alpha(fixture("k4")).alpha, 1u);
  // The Fano value is taken from subset enumeration, not hard-coded.
  auto fano = fixture("fano");
  EXPECT_EQ(exact_alpha(fano).alpha, testutil::brute_alpha(fano));
  EXPECT_EQ(exact_alpha(fixture("petersen")).alpha, testutil::brute_alpha(fixture("petersen")));
}

TEST(ExactAlpha, MatchesSubsetEnumeration) {
  for (std::uint64_t s = 0; s < 150; ++s) {
    SCOPED_TRACE(s);
    auto h = testutil::random_mixed(4 + s % 13, 2 + s % 4, 30, s);
    auto r = exact_alpha(h);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.alpha, testutil::brute_alpha(h));
    EXPECT_EQ(r.witness.size(), r.alpha);
    EXPECT_TRUE(is_independent(h, r.witness));
  }
}

TEST(ExactAlpha, EdgelessAndEmpty) {
  EXPECT_EQ(exact_alpha(Hypergraph(0, {})).alpha, 0u);
  EXPECT_EQ(exact_alpha(Hypergraph(7, {})).alpha, 7u);
}

TEST(ExactAlpha, BudgetGivesLowerBound) {
  auto h = testutil::random_mixed(40, 3, 120, 5);
  auto r = exact_alpha(h, 10);
  EXPECT_FALSE(r.exact);
  EXPECT_TRUE(is_independent(h, r.witness));
}

TEST(ExactAlpha, Deterministic) {
  auto h = testutil::random_mixed(16, 4, 30, 77);
  auto a = exact_alpha(h), b = exact_alpha(h);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
}

TEST(Exhaustive, Examples) {
  Hypergraph two(4, {{0, 1, 2}, {1, 2, 3}});
  EXPECT_EQ(enumerate_cycles_exhaustive(two, 2).size(), 1u);
  Hypergraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  EXPECT_EQ(enumerate_cycles_exhaustive(c4, 4).size(), 1u);
  EXPECT_EQ(enumerate_cycles_exhaustive(c4, 3).size(), 0u);
}

TEST(Exhaustive, LinearThreeUniformMatchesCensus) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    GenSpec g{Model::linear_random, 12, 3, {{3, 2.0}}, s};
    auto h = gen(g);
    auto c = cycle_census(h, {.max_len = 4, .witnesses = false, .stop_at_first = false});
    EXPECT_EQ(enumerate_cycles_exhaustive(h, 2).size(), c.two_cycle_count);
    EXPECT_EQ(enumerate_cycles_exhaustive(h, 3).size(), c.three_total());
    EXPECT_EQ(enumerate_cycles_exhaustive(h, 4).size(), c.four_all);
  }
}

TEST(Exhaustive, BudgetExceeded) {
  auto h = fixture("complete3u5");  // C(10, 4) = 210 quadruples
  try {
    enumerate_cycles_exhaustive(h, 4, 10);
    FAIL() << "expected BudgetExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::budget_exceeded);
  }
}
