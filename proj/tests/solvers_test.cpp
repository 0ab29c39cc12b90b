#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "oracles.hpp"
#include "stripack/reduction.hpp"
#include "stripack/solvers.hpp"

using namespace stripack;

namespace {

Instance Make(Coord W, std::vector<std::pair<Coord, Coord>> dims) {
  Instance inst;
  inst.W = W;
  ItemId id = 1;
  for (auto [w, h] : dims) inst.items.push_back({id++, w, h});
  return inst;
}

Coord Height(const Instance& inst, const Packing& p) {
  const ValidationReport r = ValidatePacking(inst, p);
  EXPECT_TRUE(r.ok()) << r.ToString();
  return p.height;
}

}  // namespace

TEST(Exact, Examples) {
  const Instance a = Make(2, {{1, 1}, {1, 1}, {2, 1}});
  EXPECT_EQ(Height(a, SolveExact(a)), 2);
  const Instance b = Make(4, {{3, 2}, {2, 2}, {2, 1}, {1, 1}});
  EXPECT_EQ(Height(b, SolveExact(b)), 4);
  EXPECT_EQ(oracle::CellFillMinHeight(b), 4);
  const Instance c = Make(1, {{1, 1}, {1, 2}, {1, 3}, {1, 4}});
  EXPECT_EQ(Height(c, SolveExact(c)), 10);
}

TEST(Exact, AgreesWithCellFillOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = oracle::RandomInstance(rng, 1 + trial % 6, 6);
    const Packing p = SolveExact(inst);
    EXPECT_EQ(Height(inst, p), oracle::CellFillMinHeight(inst));
    EXPECT_GE(p.height, AreaLowerBound(inst));
  }
}

TEST(Exact, TightWhenAreaBoundIsAttainable) {
  // Cut a W x H rectangle into strips; the optimum equals the area bound.
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const Coord W = 4 + trial % 5;
    const Coord H = 3 + trial % 4;
    Instance inst{W, {}};
    Coord x = 0;
    ItemId id = 1;
    while (x < W) {
      const Coord w = std::min<Coord>(W - x, 1 + rng() % 3);
      const Coord cut = 1 + rng() % (H - 1);
      inst.items.push_back({id++, w, cut});
      inst.items.push_back({id++, w, H - cut});
      x += w;
      if (inst.items.size() >= 8) break;
    }
    if (x < W) inst.items.push_back({id++, W - x, H});
    if (inst.items.size() > 10) continue;
    EXPECT_EQ(SolveExact(inst).height, AreaLowerBound(inst));
  }
}

TEST(Exact, LimitsAndRefusals) {
  const Instance inst = Make(7, {{3, 2}, {2, 5}, {4, 3}, {1, 4}, {5, 1}, {2, 2}, {3, 3}});
  SolverConfig tight;
  tight.node_limit = 3;
  try {
    SolveExact(inst, tight);
    ADD_FAILURE() << "expected the node limit to stop the search";
  } catch (const LimitExceededError& e) {
    EXPECT_FALSE(e.optimality_proven());
    EXPECT_TRUE(ValidatePacking(inst, e.incumbent()).ok());
  }
  const ReductionResult big = BuildInstance({2, {1, -1, 0, 2, -2, 0}});
  EXPECT_THROW(SolveExact(big.instance), Error);
}

TEST(Exact, Deterministic) {
  std::mt19937_64 rng(7);
  const Instance inst = oracle::RandomInstance(rng, 7, 7);
  EXPECT_EQ(SolveExact(inst), SolveExact(inst));
}

TEST(Heuristics, ShelfExample) {
  const Instance inst = Make(10, {{5, 4}, {5, 3}, {6, 2}});
  EXPECT_EQ(Height(inst, SolveNfdh(inst)), 6);
  EXPECT_EQ(Height(inst, SolveFfdh(inst)), 6);
}

TEST(Heuristics, FfdhReusesLowerShelf) {
  // NFDH closes the first shelf; FFDH goes back to it.
  const Instance inst = Make(10, {{6, 5}, {6, 4}, {4, 3}});
  EXPECT_EQ(Height(inst, SolveNfdh(inst)), 9);
  EXPECT_EQ(Height(inst, SolveFfdh(inst)), 9);
  const Instance b = Make(10, {{6, 5}, {5, 4}, {4, 3}, {5, 2}});
  EXPECT_EQ(Height(b, SolveNfdh(b)), 11);
  EXPECT_EQ(Height(b, SolveFfdh(b)), 9);
}

TEST(Heuristics, SingleItem) {
  const Instance inst = Make(9, {{4, 7}});
  EXPECT_EQ(Height(inst, SolveNfdh(inst)), 7);
  EXPECT_EQ(Height(inst, SolveFfdh(inst)), 7);
  EXPECT_EQ(Height(inst, SolveBottomLeft(inst)), 7);
}

TEST(Heuristics, BottomLeftUsesInputOrder) {
  const Instance inst = Make(4, {{2, 1}, {4, 1}, {2, 3}});
  const Packing p = SolveBottomLeft(inst);
  // The full-width item lands on row 1, so the 2x3 item cannot use the gap
  // beside the first one and goes on top.
  EXPECT_EQ(Height(inst, p), 5);
  EXPECT_EQ(p.placements.size(), 3u);
  for (const Placement& pl : p.placements) {
    if (pl.id == 2) EXPECT_EQ(pl.y, 1);
    if (pl.id == 3) {
      EXPECT_EQ(pl.x, 0);
      EXPECT_EQ(pl.y, 2);
    }
  }
}

TEST(Heuristics, ValidAndNeverBelowExact) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 80; ++trial) {
    const Instance inst = oracle::RandomInstance(rng, 1 + trial % 8, 9);
    const Coord opt = SolveExact(inst).height;
    for (Algorithm a : {Algorithm::kNfdh, Algorithm::kFfdh, Algorithm::kBottomLeft}) {
      SolverConfig cfg;
      cfg.algorithm = a;
      const Packing p = Solve(inst, cfg);
      EXPECT_GE(Height(inst, p), opt) << AlgorithmName(a);
      EXPECT_EQ(p, Solve(inst, cfg));
    }
  }
}

TEST(Algorithms, Names) {
  EXPECT_EQ(ParseAlgorithm("bl"), Algorithm::kBottomLeft);
  EXPECT_EQ(ParseAlgorithm("bottom_left"), Algorithm::kBottomLeft);
  EXPECT_EQ(ParseAlgorithm("exact"), Algorithm::kExact);
  EXPECT_FALSE(ParseAlgorithm("nf").has_value());
}

TEST(Config, EnvironmentOverride) {
  ::setenv("STRIPACK_NODE_LIMIT", "1234", 1);
  EXPECT_EQ(WithEnvironmentOverrides({}).node_limit, 1234);
  ::setenv("STRIPACK_NODE_LIMIT", "zero", 1);
  EXPECT_THROW(WithEnvironmentOverrides({}), Error);
  ::unsetenv("STRIPACK_NODE_LIMIT");
  EXPECT_EQ(WithEnvironmentOverrides({}).node_limit, SolverConfig{}.node_limit);
}

TEST(ThreePartition, BruteForceExamples) {
  const auto one = BruteForceThreePartition({1, {-1, 0, 1}});
  ASSERT_TRUE(one.has_value());
  EXPECT_EQ(one->triples.size(), 1u);
  EXPECT_FALSE(BruteForceThreePartition({2, {1, 1, 1, -1, -1, -1}}).has_value());
  const ThreePartitionInstance zeros{2, {0, 0, 0, 0, 0, 0}};
  const auto z = BruteForceThreePartition(zeros);
  ASSERT_TRUE(z.has_value());
  EXPECT_TRUE(IsValidCover(zeros, *z));
}

TEST(ThreePartition, AgreesWithPlantedCovers) {
  std::mt19937_64 rng(10);
  for (int n = 1; n <= 5; ++n) {
    const auto g = RandomYesInstance(n, 6, rng);
    const auto c = BruteForceThreePartition(g.tp);
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(IsValidCover(g.tp, *c));
  }
}
