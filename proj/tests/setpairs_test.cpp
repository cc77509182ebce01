#include "rainbow/constructions.hpp"
#include "rainbow/setpairs.hpp"
#include "rainbow/solvers.hpp"

#include <gtest/gtest.h>

namespace rainbow {
namespace {

SetPairSystem singleton_family(std::int64_t m) {
  std::vector<std::pair<IntSet, IntSet>> raw;
  for (std::int64_t i = 1; i <= m; ++i) {
    IntSet rest;
    for (std::int64_t j = 1; j <= m; ++j)
      if (j != i) rest.push_back(j);
    raw.emplace_back(IntSet{i}, rest);
  }
  return SetPairSystem::from(raw);
}

TEST(CrossIntersectingTest, SingletonFamily) {
  for (std::int64_t m = 2; m <= 9; ++m) {
    SetPairSystem sys = singleton_family(m);
    EXPECT_TRUE(is_cross_intersecting(sys).ok);
    EXPECT_EQ(bollobas_sum(sys), Rational(1));
  }
}

TEST(CrossIntersectingTest, SwapFamily) {
  SetPairSystem sys = SetPairSystem::from({{{1}, {2}}, {{2}, {1}}});
  EXPECT_TRUE(is_cross_intersecting(sys).ok);
  EXPECT_EQ(bollobas_sum(sys), Rational(1));
}

TEST(CrossIntersectingTest, DisjointPairsNameViolation) {
  CrossCheck c = is_cross_intersecting(SetPairSystem::from({{{1}, {2}}, {{3}, {4}}}));
  EXPECT_FALSE(c.ok);
  ASSERT_TRUE(c.violation.has_value());
  EXPECT_EQ(*c.violation, (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(CrossIntersectingTest, OwnPairMeetingIsViolation) {
  CrossCheck c = is_cross_intersecting(SetPairSystem::from({{{1, 2}, {2, 3}}, {{3}, {1}}}));
  EXPECT_FALSE(c.ok);
  ASSERT_TRUE(c.violation.has_value());
  EXPECT_EQ(c.violation->first, c.violation->second);
}

TEST(CrossIntersectingTest, TooSmallThrows) {
  EXPECT_THROW(is_cross_intersecting(SetPairSystem::from({{{1}, {2}}})), InvalidParameter);
  EXPECT_THROW(is_cross_intersecting(SetPairSystem{}), InvalidParameter);
}

TEST(SetPairSystemTest, FromSortsAndDeduplicates) {
  SetPairSystem sys = SetPairSystem::from({{{3, 1, 3}, {5, 4}}});
  EXPECT_EQ(sys.pairs[0].a, (IntSet{1, 3}));
  EXPECT_EQ(sys.pairs[0].b, (IntSet{4, 5}));
}

TEST(BollobasSumTest, UniformSystem) {
  // m pairs with |A| = |B| = 3 sum to m / 20.
  std::vector<std::pair<IntSet, IntSet>> raw;
  for (std::int64_t i = 0; i < 7; ++i) raw.push_back({{i, i + 10, i + 20}, {i + 30, i + 40, i + 50}});
  EXPECT_EQ(bollobas_sum(SetPairSystem::from(raw)), Rational(7, 20));
}

TEST(BollobasSumTest, NegativeControlExceedsOne) {
  // Copies of ({1},{2}) do not cross-intersect and may sum past 1.
  std::vector<std::pair<IntSet, IntSet>> raw(5, {{1}, {2}});
  SetPairSystem sys = SetPairSystem::from(raw);
  EXPECT_FALSE(is_cross_intersecting(sys).ok);
  EXPECT_EQ(bollobas_sum(sys), Rational(5, 2));
}

TEST(ExtractSetpairsTest, AchThreeSixLocalOptimum) {
  Instance inst = ach_instance(3, 6);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SolveReport rep = local_search_rainbow(inst, seed);
    GoodEdgeTable table = good_edges(inst, rep.matching);
    for (std::size_t pos = 0; pos < rep.size(); ++pos) {
      SetPairSystem sys = extract_setpairs(inst, rep.matching, pos);
      const std::size_t ell = table.good_colors_of(pos).size();
      ASSERT_EQ(sys.size(), 2 * ell);
      ASSERT_LE(2 * ell, 20u);
      if (ell == 0) continue;
      ASSERT_TRUE(is_cross_intersecting(sys).ok);
      ASSERT_LE(bollobas_sum(sys), Rational(1));
    }
  }
}

TEST(ExtractSetpairsTest, RandomLocalOptima) {
  std::size_t nonempty = 0;
  for (int r = 3; r <= 4; ++r)
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const int n = 4 + static_cast<int>(seed % 9);
      Instance inst = random_instance(r, n, n, seed);
      SolveReport rep = local_search_rainbow(inst, seed);
      GoodEdgeTable table = good_edges(inst, rep.matching);
      for (std::size_t pos = 0; pos < rep.size(); ++pos) {
        SetPairSystem sys = extract_setpairs(table, pos);
        if (sys.size() == 0) continue;
        ++nonempty;
        for (const auto& p : sys.pairs) {
          ASSERT_EQ(p.a.size(), static_cast<std::size_t>(r));
          ASSERT_EQ(p.b.size(), static_cast<std::size_t>(r));
        }
        ASSERT_TRUE(is_cross_intersecting(sys).ok);
        ASSERT_LE(bollobas_sum(sys), Rational(1));
      }
    }
  EXPECT_GT(nonempty, 0u);
}

TEST(ExtractSetpairsTest, SwappableColorsThrow) {
  // Colors 1 and 2 have disjoint witnesses local to {1,2}: a growing swap.
  Instance inst;
  inst.r = 2;
  inst.matchings = {Matching{{Edge{1, 2}}}, Matching{{Edge{1, 5}, Edge{2, 6}}},
                    Matching{{Edge{1, 7}, Edge{2, 8}}}};
  RainbowMatching rm{{{0, Edge{1, 2}}}};
  EXPECT_THROW(extract_setpairs(inst, rm, 0), PreconditionViolation);
}

TEST(ExtractSetpairsTest, SingleGoodColor) {
  // Only color 1 is good for {1,2}; its witnesses give a size-2 system.
  Instance inst;
  inst.r = 2;
  inst.matchings = {Matching{{Edge{1, 2}}}, Matching{{Edge{1, 5}, Edge{2, 6}}}};
  RainbowMatching rm{{{0, Edge{1, 2}}}};
  SetPairSystem sys = extract_setpairs(inst, rm, 0);
  ASSERT_EQ(sys.size(), 2u);
  EXPECT_EQ(sys.pairs[0].a, (IntSet{1, 5}));
  EXPECT_EQ(sys.pairs[0].b, (IntSet{2, 6}));
  EXPECT_EQ(sys.pairs[1].a, (IntSet{2, 6}));
  EXPECT_EQ(sys.pairs[1].b, (IntSet{1, 5}));
}

TEST(ExtractSetpairsTest, EdgePositionOutOfRange) {
  Instance inst = ach_instance(3, 4);
  SolveReport rep = exact_max_rainbow(inst);
  EXPECT_THROW(extract_setpairs(inst, rep.matching, rep.size()), InvalidParameter);
}

}  // namespace
}  // namespace rainbow
