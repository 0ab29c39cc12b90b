#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "oracles.hpp"
#include "stripack/error.hpp"
#include "stripack/solvers.hpp"
#include "stripack/structure.hpp"

using namespace stripack;

namespace {

Rational Q(const char* text) { return ParseRational(text); }

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidInput;
}

Instance Make(Coord W, std::vector<std::pair<Coord, Coord>> dims) {
  Instance inst;
  inst.W = W;
  ItemId id = 1;
  for (auto [w, h] : dims) inst.items.push_back({id++, w, h});
  return inst;
}

struct Level1Run {
  PartitionParams params;
  ItemClassification classes;
  RoundedInstance rounded;
  Packing snapped;
  Level1Result level1;
};

// Same preprocessing chain the repacker uses, stopping after level one.
Level1Run RunLevel1(const Instance& inst, const Packing& ref, const Rational& eps,
                    const Rational& delta) {
  Level1Run r;
  r.params = {eps, delta, MuCeiling(eps, delta), ref.height};
  const GridScaling s = GridScaleFactors(inst.W, ref.height, eps, delta);
  const Instance scaled = ScaleInstance(inst, s);
  r.params.opt = ref.height * s.ky;
  r.classes = ClassifyItems(scaled, r.params);
  r.rounded = RoundHeights(scaled, r.classes, r.params);
  r.snapped = SnapToGrid(r.rounded.instance, r.classes, ScalePacking(ref, s), r.rounded.grid);
  r.level1 = BuildLevel1Partition(r.rounded.instance, r.classes, r.params, r.snapped);
  return r;
}

std::vector<Rect> BoxRects(const BoxPartition& p) {
  std::vector<Rect> out;
  for (const Box& b : p.boxes) out.push_back(b.rect);
  return out;
}

}  // namespace

TEST(Rational, ParsesAndFormats) {
  EXPECT_EQ(Q("1/4"), Rational(1, 4));
  EXPECT_EQ(Q("0.25"), Rational(1, 4));
  EXPECT_EQ(Q("3"), Rational(3));
  EXPECT_EQ(Q("007/010"), Rational(7, 10));
  EXPECT_EQ(FormatRational(Q("2/8")), "1/4");
  EXPECT_EQ(FloorOf(Q("7/2")), 3);
  EXPECT_EQ(CeilOf(Q("7/2")), 4);
  EXPECT_EQ(CodeOf([] { ParseRational("x/2"); }), ErrorCode::kParse);
}

TEST(OptCandidates, Examples) {
  EXPECT_EQ(OptCandidates(Make(1, {{1, 10}}), Q("1/2")), (std::vector<Coord>{10, 15, 20}));
  for (const char* eps : {"1/3", "1/5", "1/100"}) {
    const auto c = OptCandidates(Make(1, {{1, 1}}), Q(eps));
    EXPECT_NE(std::find(c.begin(), c.end(), 1), c.end());
    EXPECT_NE(std::find(c.begin(), c.end(), 2), c.end());
  }
  EXPECT_EQ(OptCandidates(Make(3, {{3, 7}}), Q("1/4")).front(), 7);
}

TEST(OptCandidates, SomeCandidateIsCloseToOpt) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = oracle::RandomInstance(rng, 5, 6);
    const Coord opt = oracle::CellFillMinHeight(inst);
    const auto c = OptCandidates(inst, Q("1/4"));
    ASSERT_TRUE(std::is_sorted(c.begin(), c.end()));
    // OPT <= 2 lb for these instances (column bound), so a candidate within
    // a (1 + eps) factor of it must exist.
    const bool close = std::any_of(c.begin(), c.end(), [&](Coord v) {
      return v >= opt && Rational(v) <= Rational(opt) * Q("5/4");
    });
    if (opt <= 2 * AreaLowerBound(inst)) EXPECT_TRUE(close) << "opt " << opt;
  }
}

TEST(DeltaMu, UnitSquares) {
  Instance inst = Make(100, {});
  for (int i = 0; i < 50; ++i) inst.items.push_back({i + 1, 1, 1});
  // With delta = 1/10 a 1x1 item is below delta W but not below mu W, so it
  // is medium; the first rung passes the area bound, the second has no
  // medium items at all and wins the minimisation.
  const Rational eps = Q("1/10");
  const PartitionParams first{eps, eps, MuCeiling(eps, eps), 100};
  EXPECT_EQ(MediumArea(inst, first), 50);
  EXPECT_LE(MediumArea(inst, first), eps * 100 * 100);
  const PartitionParams p = ChooseDeltaMu(inst, eps, 100);
  EXPECT_EQ(p.delta, MuCeiling(eps, eps));
  EXPECT_EQ(MediumArea(inst, p), 0);
}

TEST(DeltaMu, IdenticalItemsFindEmptyBand) {
  Instance inst = Make(1000, {});
  for (int i = 0; i < 30; ++i) inst.items.push_back({i + 1, 10, 10});
  const PartitionParams p = ChooseDeltaMu(inst, Q("1/10"), 1000);
  EXPECT_EQ(MediumArea(inst, p), 0);
  // Independently: some rung's band [mu W, delta W) misses 10.
  const auto ladder = DeltaLadder(Q("1/10"), 4);
  bool empty_band = false;
  for (std::size_t j = 0; j + 1 < ladder.size(); ++j) {
    const Rational lo = ladder[j + 1] * 1000;
    const Rational hi = ladder[j] * 1000;
    if (!(lo <= 10 && 10 < hi)) empty_band = true;
  }
  EXPECT_TRUE(empty_band);
}

TEST(DeltaMu, ParametersSatisfyInvariants) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = oracle::RandomInstance(rng, 8, 40);
    const Coord opt = 2 * AreaLowerBound(inst);
    for (const char* e : {"1/3", "1/4", "1/10"}) {
      const PartitionParams p = ChooseDeltaMu(inst, Q(e), opt);
      EXPECT_NO_THROW(CheckPartitionParams(p));
      const Rational de = p.delta * p.epsilon;
      EXPECT_LE(p.mu, de * de * de);
      EXPECT_LE(MediumArea(inst, p), p.epsilon * inst.W * opt);
    }
  }
}

TEST(DeltaMu, LadderLength) {
  EXPECT_EQ(DeltaLadder(Q("1/2"), 100).size(), 6u);  // j = 0..4 plus mu of the last
  EXPECT_EQ(DeltaLadder(Q("1/4"), 2)[1], Q("1/40960"));
  EXPECT_EQ(DeltaLadder(Q("1/2"), 3)[2], Q("1/1280") * Q("1/1280") * Q("1/1280") / 10);
}

TEST(Classify, SixClassExample) {
  const PartitionParams p{Q("1/10"), Q("1/10"), Q("1/100"), 1000};
  ASSERT_NO_THROW(CheckPartitionParams({Q("1/10"), Q("1/10"), MuCeiling(Q("1/10"), Q("1/10")), 1000}));
  const std::vector<std::pair<Item, ItemClass>> cases{
      {{1, 200, 500}, ItemClass::kLarge},    {{2, 50, 400}, ItemClass::kTall},
      {{3, 5, 200}, ItemClass::kVertical},   {{4, 300, 5}, ItemClass::kHorizontal},
      {{5, 5, 5}, ItemClass::kSmall},        {{6, 50, 50}, ItemClass::kMedium},
      {{7, 100, 100}, ItemClass::kLarge},    {{8, 99, 334}, ItemClass::kTall},
      {{9, 9, 333}, ItemClass::kVertical},   {{10, 10, 5}, ItemClass::kMedium},
  };
  for (const auto& [item, cls] : cases) {
    EXPECT_EQ(ClassifyItem(item, 1000, p), cls) << item.w << "x" << item.h;
  }
  EXPECT_TRUE(ClassifyItems(Make(1000, {}), p).classes.empty());
}

TEST(Classify, PartitionAndDefinitionsOnFuzz) {
  std::mt19937_64 rng(12);
  const PartitionParams p{Q("1/4"), Q("1/5"), Q("1/20"), 300};
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = oracle::RandomInstance(rng, 20, 300, 300);
    const ItemClassification c = ClassifyItems(inst, p);
    ASSERT_EQ(c.classes.size(), inst.items.size());
    std::size_t total = 0;
    for (ItemClass k : {ItemClass::kLarge, ItemClass::kTall, ItemClass::kVertical,
                        ItemClass::kHorizontal, ItemClass::kSmall, ItemClass::kMedium}) {
      total += c.Members(k).size();
    }
    EXPECT_EQ(total, inst.items.size());
    for (const Item& it : inst.items) {
      // Thresholds: delta W = 60, delta opt = 60, opt / 3 = 100, mu W = mu opt = 15.
      const bool L = it.w >= 60 && it.h >= 60;
      const bool T = it.w < 60 && 3 * it.h > 300;
      const bool V = it.w < 15 && it.h >= 60 && 3 * it.h <= 300;
      const bool H = it.w >= 60 && it.h < 15;
      const bool S = it.w < 15 && it.h < 15;
      ItemClass expect = ItemClass::kMedium;
      if (L) expect = ItemClass::kLarge;
      if (T) expect = ItemClass::kTall;
      if (V) expect = ItemClass::kVertical;
      if (H) expect = ItemClass::kHorizontal;
      if (S) expect = ItemClass::kSmall;
      EXPECT_LE(L + T + V + H + S, 1);
      EXPECT_EQ(c.Of(it.id), expect);
    }
  }
}

TEST(Classify, NamesRoundTrip) {
  for (ItemClass k : {ItemClass::kLarge, ItemClass::kTall, ItemClass::kVertical,
                      ItemClass::kHorizontal, ItemClass::kSmall, ItemClass::kMedium}) {
    EXPECT_EQ(ParseItemClass(ItemClassName(k)), k);
  }
  EXPECT_FALSE(ParseItemClass("Q").has_value());
}

TEST(Round, Examples) {
  const PartitionParams p{Q("1/10"), Q("1/10"), Q("1/100000"), 1000};
  const Instance inst = Make(1000, {{200, 250}, {200, 253}, {50, 5}});
  const ItemClassification c = ClassifyItems(inst, p);
  const RoundedInstance r = RoundHeights(inst, c, p);
  EXPECT_EQ(r.grid, 10);
  EXPECT_EQ(r.instance.items[0].h, 250);
  EXPECT_EQ(r.instance.items[1].h, 260);
  EXPECT_EQ(r.instance.items[2].h, 5);  // not grid-aligned
  const RoundedInstance again = RoundHeights(r.instance, c, p);
  for (std::size_t i = 0; i < inst.items.size(); ++i) {
    EXPECT_GE(r.instance.items[i].h, inst.items[i].h);
    EXPECT_EQ(again.instance.items[i], r.instance.items[i]);
  }
}

TEST(Round, DegenerateGrid) {
  const PartitionParams p{Q("1/10"), Q("1/10"), Q("1/100000"), 50};
  EXPECT_EQ(CodeOf([&] { GridStep(p); }), ErrorCode::kDegenerateGrid);
  EXPECT_EQ(CodeOf([&] { CellWidth(p, 99); }), ErrorCode::kDegenerateGrid);
}

TEST(Round, SnappedPackingIsValidAndPerColumnInflationIsSmall) {
  std::mt19937_64 rng(31);
  const Rational eps = Q("1/4");
  const Rational delta = Q("1/5");
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = oracle::RandomInstance(rng, 7, 8);
    const Packing ref = SolveBottomLeft(inst);
    const Level1Run r = RunLevel1(inst, ref, eps, delta);
    ASSERT_TRUE(ValidatePacking(r.rounded.instance, r.snapped).ok());
    const Coord g = r.rounded.grid;
    for (const PlacedItem& it : Resolve(r.rounded.instance, r.snapped)) {
      if (r.classes.IsGridAligned(it.id)) EXPECT_EQ(it.rect.y % g, 0);
    }
    // Each grid-aligned item can push the column up by less than 2g (its own
    // rounding plus its y snap), and a column holds at most 1/delta of them.
    const Coord scaled_ref = ref.height * (r.params.opt / ref.height);
    EXPECT_LE(r.snapped.height, scaled_ref + 2 * g * 5);
  }
}

TEST(Level1, SingleLargeItem) {
  const Instance inst = Make(10, {{10, 6}});
  const Packing ref{{{1, 0, 0}}, 6};
  const Level1Run r = RunLevel1(inst, ref, Q("1/3"), Q("1/3"));
  const auto& part = r.level1.partition;
  ASSERT_EQ(part.assignment.size(), 1u);
  EXPECT_EQ(part.boxes[part.assignment.at(1)].tag, BoxTag::kLarge);
  for (std::size_t i = 0; i < part.boxes.size(); ++i) {
    if (i != part.assignment.at(1)) EXPECT_EQ(part.boxes[i].tag, BoxTag::kHorizontal);
  }
  EXPECT_TRUE(r.level1.crossing.horizontal.empty());
  EXPECT_TRUE(r.level1.crossing.vertical.empty());
  EXPECT_TRUE(r.level1.crossing.tall.empty());
  EXPECT_TRUE(oracle::Tiles(BoxRects(part), part.width, part.height));
}

TEST(Level1, NoTallOrVerticalGivesHorizontalRows) {
  // Wide flat items only: no tall or vertical class members.
  const Instance inst = Make(9, {{9, 1}, {5, 1}, {4, 1}, {9, 1}});
  const Packing ref{{{1, 0, 0}, {2, 0, 1}, {3, 5, 1}, {4, 0, 2}}, 3};
  const Level1Run r = RunLevel1(inst, ref, Q("1/3"), Q("1/3"));
  const auto& part = r.level1.partition;
  for (const Box& b : part.boxes) {
    if (b.tag == BoxTag::kLarge) continue;
    EXPECT_EQ(b.tag, BoxTag::kHorizontal);
    EXPECT_EQ(b.rect.h, r.level1.grid);
  }
  EXPECT_TRUE(oracle::Tiles(BoxRects(part), part.width, part.height));
}

TEST(Level1, OffGridReferenceIsRejected) {
  const PartitionParams p{Q("1/3"), Q("1/3"), MuCeiling(Q("1/3"), Q("1/3")), 90};
  const Instance inst = Make(90, {{50, 50}});
  const ItemClassification c = ClassifyItems(inst, p);
  const RoundedInstance rounded = RoundHeights(inst, c, p);
  const Packing ref{{{1, 0, 3}}, 53};
  EXPECT_EQ(CodeOf([&] { BuildLevel1Partition(rounded.instance, c, p, ref); }),
            ErrorCode::kGridViolation);
}

TEST(Level1, FuzzBoundTilingAndCrossingRule) {
  std::mt19937_64 rng(77);
  for (const auto& [e, d] : {std::pair{"1/3", "1/3"}, std::pair{"1/4", "1/5"}}) {
    for (int trial = 0; trial < 40; ++trial) {
      const Instance inst = oracle::RandomInstance(rng, 2 + trial % 5, 7);
      const Packing ref = SolveExact(inst);
      const Level1Run r = RunLevel1(inst, ref, Q(e), Q(d));
      const auto& part = r.level1.partition;
      EXPECT_LE(Rational(part.boxes.size()), FirstLevelBoxBound(r.params));
      EXPECT_TRUE(oracle::Tiles(BoxRects(part), part.width, part.height));
      EXPECT_TRUE(CrossingRuleViolations(part, r.rounded.instance, r.classes, r.snapped).empty());
      for (const Box& b : part.boxes) {
        if (b.tag == BoxTag::kHorizontal) EXPECT_EQ(b.rect.h, r.level1.grid);
        if (b.tag == BoxTag::kVertical) EXPECT_LE(b.rect.w, r.level1.cell_width);
      }
    }
  }
}

TEST(Relocate, Empty) {
  const PartitionParams p{Q("1/4"), Q("1/4"), MuCeiling(Q("1/4"), Q("1/4")), 1000};
  const RelocatedItems r = RelocateCrossing(Make(1200, {}), {}, {}, p);
  EXPECT_FALSE(r.horizontal.has_value());
  EXPECT_TRUE(r.vertical.empty());
}

TEST(Relocate, HorizontalStackAndVerticalGroups) {
  const PartitionParams p{Q("1/4"), Q("1/4"), Q("1/40960"), 40960};
  const Instance inst =
      Make(1200, {{400, 1}, {900, 1}, {600, 1}, {3, 5000}, {3, 5000}, {3, 7000}});
  const RelocatedItems r = RelocateCrossing(inst, {1, 2, 3}, {4, 5, 6}, p);
  ASSERT_TRUE(r.horizontal.has_value());
  EXPECT_EQ(r.horizontal->box.rect.w, 1200);
  EXPECT_EQ(r.horizontal->box.rect.h, 10240);
  EXPECT_EQ(MaxTop(r.horizontal->items), 3);
  // Widest at the bottom.
  for (const PlacedItem& it : r.horizontal->items) {
    EXPECT_EQ(it.rect.x, 0);
    if (it.id == 2) EXPECT_EQ(it.rect.y, 0);
    if (it.id == 1) EXPECT_EQ(it.rect.y, 2);
  }
  ASSERT_EQ(r.vertical.size(), 2u);
  std::vector<std::pair<Coord, Coord>> boxes;
  for (const PackedBox& b : r.vertical) {
    boxes.push_back({b.box.rect.h, b.box.rect.w});
    EXPECT_TRUE(oracle::PairwiseOverlaps(b.items).empty());
    for (const PlacedItem& it : b.items) EXPECT_TRUE(b.box.rect.Contains(it.rect));
  }
  std::sort(boxes.begin(), boxes.end());
  EXPECT_EQ(boxes, (std::vector<std::pair<Coord, Coord>>{{5000, 6}, {7000, 3}}));
}

TEST(Relocate, CapacityExceeded) {
  const PartitionParams p{Q("1/4"), Q("1/4"), Q("1/40960"), 40960};
  const Instance inst = Make(120, {{3, 5000}, {3, 5000}, {5, 7000}});
  EXPECT_EQ(CodeOf([&] { RelocateCrossing(inst, {}, {1, 2, 3}, p); }),
            ErrorCode::kCapacityExceeded);
}
