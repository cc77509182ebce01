#include "oracles.hpp"
#include "rainbow/constructions.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/solvers.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

namespace rainbow {
namespace {

Instance disjoint_instance(int r, int n, int size) {
  Instance inst;
  inst.r = r;
  Vertex next = 0;
  for (int i = 0; i < n; ++i) {
    Matching m;
    for (int k = 0; k < size; ++k) {
      Edge e;
      for (int j = 0; j < r; ++j) e.vertices.push_back(next++);
      m.edges.push_back(std::move(e));
    }
    inst.matchings.push_back(std::move(m));
  }
  return inst;
}

TEST(ExactSolverTest, EmptyInstance) {
  Instance inst;
  inst.r = 3;
  SolveReport rep = exact_max_rainbow(inst);
  EXPECT_EQ(rep.size(), 0u);
  EXPECT_EQ(rep.certificate, Certificate::ExactOptimum);
}

TEST(ExactSolverTest, DisjointMatchingsReachN) {
  Instance inst = disjoint_instance(3, 6, 2);
  EXPECT_EQ(exact_max_rainbow(inst).size(), 6u);
}

TEST(ExactSolverTest, AchThreeFour) {
  SolveReport rep = exact_max_rainbow(ach_instance(3, 4));
  EXPECT_EQ(rep.size(), 2u);
  EXPECT_EQ(rep.solver, "exact");
  EXPECT_GT(rep.stats.nodes, 0u);
}

TEST(ExactSolverTest, MatchesBruteForce) {
  std::uint64_t seed = 100;
  for (int r = 2; r <= 4; ++r) {
    for (int n = 1; n <= 5; ++n) {
      for (int trial = 0; trial < 12; ++trial) {
        Instance inst = oracle::ragged_instance(r, n, 5, ++seed);
        SolveReport rep = exact_max_rainbow(inst);
        ASSERT_EQ(rep.certificate, Certificate::ExactOptimum);
        ASSERT_TRUE(is_rainbow_matching(inst, rep.matching));
        ASSERT_EQ(rep.size(), oracle::brute_force_max_rainbow(inst)) << "seed " << seed;
      }
    }
  }
}

TEST(ExactSolverTest, InvariantUnderRelabeling) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Instance inst = random_instance(3, 7, 7, seed);
    const std::size_t base = exact_max_rainbow(inst).size();
    Rng rng(seed + 1000);

    Instance colors = inst;
    rng.shuffle(colors.matchings);
    EXPECT_EQ(exact_max_rainbow(colors).size(), base);

    Instance edges = inst;
    for (auto& m : edges.matchings) rng.shuffle(m.edges);
    EXPECT_EQ(exact_max_rainbow(edges).size(), base);

    std::vector<Vertex> perm(inst.vertex_count());
    std::iota(perm.begin(), perm.end(), Vertex{0});
    rng.shuffle(perm);
    Instance relabeled = inst;
    for (auto& m : relabeled.matchings)
      for (auto& e : m.edges) {
        for (auto& v : e.vertices) v = perm[v];
        std::sort(e.vertices.begin(), e.vertices.end());
      }
    EXPECT_EQ(exact_max_rainbow(relabeled).size(), base);
  }
}

TEST(ExactSolverTest, BudgetGivesHeuristicCertificate) {
  ExactOptions opts;
  opts.node_budget = 1;
  SolveReport rep = exact_max_rainbow(random_instance(3, 10, 10, 3), opts);
  EXPECT_TRUE(is_rainbow_matching(random_instance(3, 10, 10, 3), rep.matching));
  if (rep.certificate != Certificate::ExactOptimum) EXPECT_EQ(rep.certificate, Certificate::Heuristic);
}

TEST(ExactSolverTest, ParallelAgreesWithSerial) {
  ExactOptions par;
  par.parallel = true;
  par.threads = 4;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance inst = random_instance(3, 9, 9, seed);
    SolveReport a = exact_max_rainbow(inst);
    SolveReport b = exact_max_rainbow(inst, par);
    EXPECT_EQ(a.size(), b.size());
    EXPECT_EQ(b.certificate, Certificate::ExactOptimum);
    EXPECT_TRUE(is_rainbow_matching(inst, b.matching));
  }
  EXPECT_EQ(exact_max_rainbow(k4_union_instance(7), par).size(), 6u);
}

TEST(GreedyTest, CycleIdentityOrder) {
  SolveReport rep = greedy_rainbow(cycle_instance(3), {0, 1, 2});
  EXPECT_EQ(rep.size(), 2u);
  EXPECT_EQ(rep.certificate, Certificate::Heuristic);
}

TEST(GreedyTest, DisjointAnyOrder) {
  Instance inst = disjoint_instance(2, 5, 1);
  EXPECT_EQ(greedy_rainbow(inst, {4, 2, 0, 1, 3}).size(), 5u);
}

TEST(GreedyTest, RejectsNonPermutation) {
  Instance inst = cycle_instance(3);
  EXPECT_THROW(greedy_rainbow(inst, {0, 0, 1}), InvalidParameter);
  EXPECT_THROW(greedy_rainbow(inst, {0, 1}), InvalidParameter);
}

TEST(GreedyTest, AtLeastCeilNOverR) {
  for (int r = 2; r <= 5; ++r)
    for (int n = 1; n <= 12; ++n)
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Instance inst = random_instance(r, n, n, seed);
        const std::size_t size = greedy_rainbow(inst).size();
        ASSERT_GE(size * static_cast<std::size_t>(r), static_cast<std::size_t>(n));
      }
}

TEST(LocalSearchTest, DisjointNeedsNoSwaps) {
  SolveReport rep = local_search_rainbow(disjoint_instance(3, 5, 2));
  EXPECT_EQ(rep.size(), 5u);
  EXPECT_EQ(rep.stats.swaps, 0u);
  EXPECT_EQ(rep.certificate, Certificate::LocalOptimum);
}

TEST(LocalSearchTest, LocalOptimaAreMaximalAndSatisfyCountingInequality) {
  for (int r = 3; r <= 4; ++r)
    for (int n = 2; n <= 12; ++n)
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Instance inst = random_instance(r, n, n, seed);
        SolveReport rep = local_search_rainbow(inst, seed);
        ASSERT_TRUE(is_rainbow_matching(inst, rep.matching));
        ASSERT_FALSE(find_extension(inst, rep.matching).has_value());
        ASSERT_FALSE(find_swap(inst, rep.matching).has_value());
        ASSERT_GE(rep.size(), greedy_rainbow(inst).size() > 0 ? 1u : 0u);
        ASSERT_TRUE(check_gibounds(r, n, n, static_cast<std::int64_t>(rep.size())).holds) << r << " " << n;
        // (r+1) size >= 2n - binom(2r, r)
        ASSERT_GE(Integer(r + 1) * rep.size(), Integer(2 * n) - binomial(2 * static_cast<unsigned>(r), r));
      }
}

TEST(LocalSearchTest, SeededRunsRepeat) {
  Instance inst = random_instance(3, 10, 10, 4);
  SolveReport a = local_search_rainbow(inst, 77);
  SolveReport b = local_search_rainbow(inst, 77);
  EXPECT_EQ(a.matching.assignment, b.matching.assignment);
  EXPECT_EQ(a.stats.seed, 77u);
}

TEST(LocalSearchTest, AchThreeSix) {
  Instance inst = ach_instance(3, 6);
  SolveReport rep = local_search_rainbow(inst);
  EXPECT_GE(rep.size(), std::max<std::size_t>(greedy_rainbow(inst).size(), 2));
  EXPECT_LE(rep.size(), 4u);
}

TEST(ImproveLocallyTest, SwapGrowsMatching) {
  // M = {12}; colors 1 and 2 each meet V(M) only inside {1,2}.
  Instance inst;
  inst.r = 2;
  inst.matchings = {Matching{{Edge{1, 2}}}, Matching{{Edge{1, 5}}}, Matching{{Edge{2, 7}}}};
  RainbowMatching start{{{0, Edge{1, 2}}}};
  ASSERT_FALSE(find_extension(inst, start).has_value());
  auto swap = find_swap(inst, start);
  ASSERT_TRUE(swap.has_value());
  EXPECT_EQ(swap->edge_pos, 0u);
  SolveReport rep = improve_locally(inst, start);
  EXPECT_EQ(rep.size(), 2u);
  EXPECT_EQ(rep.stats.swaps, 1u);
  EXPECT_TRUE(is_rainbow_matching(inst, rep.matching));
}

TEST(ImproveLocallyTest, RejectsNonRainbowStart) {
  Instance inst = cycle_instance(3);
  EXPECT_THROW(improve_locally(inst, RainbowMatching{{{0, Edge{0, 1}}, {1, Edge{1, 2}}}}),
               InvalidParameter);
}

TEST(GoodEdgesTest, RequiresExtensionMaximal) {
  Instance inst = cycle_instance(3);
  EXPECT_THROW(good_edges(inst, RainbowMatching{{{0, Edge{0, 1}}}}), PreconditionViolation);
}

TEST(GoodEdgesTest, AchThreeFourMaximum) {
  Instance inst = ach_instance(3, 4);
  SolveReport rep = exact_max_rainbow(inst);
  GoodEdgeTable table = good_edges(inst, rep.matching);
  EXPECT_EQ(table.unused.size(), 2u);
  for (const auto& cg : table.unused) EXPECT_GE(2 * static_cast<long>(cg.g), 2 * 4 - 4 * 2);
  EXPECT_LE(2 * table.total_good(), 20u * rep.size());
}

TEST(GoodEdgesTest, TableInvariants) {
  for (int r = 3; r <= 4; ++r)
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const int n = 3 + static_cast<int>(seed % 8);
      Instance inst = random_instance(r, n, n, seed);
      SolveReport rep = local_search_rainbow(inst, seed);
      GoodEdgeTable table = good_edges(inst, rep.matching);
      const std::size_t m = rep.size();
      std::set<Vertex> vm;
      for (const auto& ce : rep.matching.assignment) vm.insert(ce.edge.vertices.begin(), ce.edge.vertices.end());

      for (const auto& cg : table.unused) {
        ASSERT_EQ(cg.g, cg.good.size());
        ASSERT_LE(cg.g, m);
        const auto N = static_cast<long>(cg.matching_size);
        const auto rl = static_cast<long>(r);
        const auto ml = static_cast<long>(m);
        // Counting over V(M): h >= 2N - rm, and h <= (r-1) g + m.
        ASSERT_GE(static_cast<long>(cg.h), 2 * N - rl * ml);
        ASSERT_LE(static_cast<long>(cg.h), (rl - 1) * static_cast<long>(cg.g) + ml);
        ASSERT_GE((rl - 1) * static_cast<long>(cg.g), 2 * N - (rl + 1) * ml);
        for (const auto& w : cg.good) {
          const Edge& e = rep.matching.assignment[w.edge_pos].edge;
          ASSERT_NE(w.first, w.second);
          for (const Edge* f : {&w.first, &w.second}) {
            ASSERT_TRUE(std::find(inst.matchings[cg.color].edges.begin(), inst.matchings[cg.color].edges.end(),
                                  *f) != inst.matchings[cg.color].edges.end());
            for (Vertex v : f->vertices) ASSERT_TRUE(!vm.count(v) || e.contains(v));
          }
        }
      }
      // Swap-maximal: every edge is good for at most binom(2r, r)/2 colors.
      const std::size_t cap = binomial(2 * static_cast<unsigned>(r), r).convert_to<std::size_t>() / 2;
      for (std::size_t pos = 0; pos < m; ++pos) ASSERT_LE(table.good_colors_of(pos).size(), cap);
      ASSERT_LE(table.total_good(), cap * m);
    }
}

TEST(ChernoffTest, ClosedFormValues) {
  const Real twelve = chernoff_tail(24, Real(1) / 2, Real(1) / 2);
  EXPECT_LT(abs(twelve - 2 * exp(Real(-1))), Real("1e-40"));
  EXPECT_LT(abs(twelve - Real("0.73575888234288464")), Real("1e-15"));

  const Real near_one = chernoff_tail(600, Real(1) / 2, Real(1) - Real("1e-30"));
  EXPECT_LT(abs(near_one / (2 * exp(Real(-100))) - 1), Real("1e-25"));

  EXPECT_EQ(chernoff_tail(0, Real(1) / 2, Real(1) / 2), Real(2));
}

TEST(ChernoffTest, RejectsOutOfRange) {
  EXPECT_THROW(chernoff_tail(10, Real(1) / 2, Real(1)), InvalidParameter);
  EXPECT_THROW(chernoff_tail(10, Real(1) / 2, Real(0)), InvalidParameter);
  EXPECT_THROW(chernoff_tail(10, Real(0), Real(1) / 2), InvalidParameter);
  EXPECT_THROW(chernoff_tail(10, Real(1), Real(1) / 2), InvalidParameter);
}

TEST(SampleAndExtendTest, DisjointMatchingsSucceed) {
  for (int n = 1; n <= 8; ++n) {
    Instance inst = disjoint_instance(3, n, 2);
    SampleResult res = sample_and_extend(inst, static_cast<std::size_t>(n), 1);
    EXPECT_TRUE(res.success);
    EXPECT_EQ(res.report.size(), static_cast<std::size_t>(n));
    EXPECT_TRUE(is_rainbow_matching(inst, res.report.matching));
    EXPECT_FALSE(res.failed_stage.has_value());
  }
}

TEST(SampleAndExtendTest, FailureNamesAStage) {
  Instance inst = ach_instance(3, 4);
  SampleResult res = sample_and_extend(inst, 4, 3, SampleOptions{5});
  EXPECT_FALSE(res.success);
  ASSERT_TRUE(res.failed_stage.has_value());
  EXPECT_FALSE(res.failure_reason.empty());
  EXPECT_TRUE(is_rainbow_matching(inst, res.report.matching));
  EXPECT_LE(res.diagnostics.attempts, 5u);
}

TEST(SampleAndExtendTest, DeterministicPerSeed) {
  Instance inst = dummy_lift(random_instance(3, 12, 12, 8), 6);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SampleResult a = sample_and_extend(inst, 12, seed);
    SampleResult b = sample_and_extend(inst, 12, seed);
    EXPECT_EQ(a.success, b.success);
    EXPECT_EQ(a.failed_stage, b.failed_stage);
    EXPECT_EQ(a.report.matching.assignment, b.report.matching.assignment);
    EXPECT_EQ(a.diagnostics.attempts, b.diagnostics.attempts);
    EXPECT_EQ(a.diagnostics.sample_vertices, b.diagnostics.sample_vertices);
  }
}

TEST(SampleAndExtendTest, RejectsTargetAboveN) {
  EXPECT_THROW(sample_and_extend(cycle_instance(3), 4, 0), InvalidParameter);
}

}  // namespace
}  // namespace rainbow
