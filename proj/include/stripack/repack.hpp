#pragma once

// Rearrangement of tall and vertical items inside vertical boxes, and the
// second-level partition assembled from a reference packing.

#include <optional>
#include <vector>

#include "stripack/geometry.hpp"
#include "stripack/structure.hpp"

namespace stripack {

/// Tall items of one vertical box split into top and bottom items, plus the
/// unit-width slices of its vertical items. Rects are absolute.
struct VerticalBoxScene {
  Box box;
  std::vector<PlacedItem> top;
  std::vector<PlacedItem> bottom;
  std::vector<ItemId> crossing;            // T': tall items not inside box
  std::vector<PlacedItem> unit_verticals;  // width 1; id = the sliced item

  bool IsCrossing(ItemId id) const;
  std::vector<PlacedItem> TallItems() const;
};

/// Builds a scene. `tall` holds every tall item meeting the box (full rects),
/// `verticals` the vertical items inside it, which are cut into unit slices.
/// Error(kInvariantBroken) if a column meets three tall items, an item has
/// tall items both above and below, or a tall item is cut by a horizontal
/// edge of the box.
VerticalBoxScene MakeScene(const Box& box, const std::vector<PlacedItem>& tall,
                           const std::vector<PlacedItem>& verticals);

struct ItemGroup {
  Box box;
  Coord height = 0;
  std::vector<PlacedItem> members;
};

struct GroupedBoxes {
  std::vector<ItemGroup> groups;
  std::vector<PlacedItem> Items() const;
};

/// Groups maximal runs of horizontally adjacent items with equal y and height.
GroupedBoxes GroupAdjacent(std::vector<PlacedItem> items);

struct CrossingSplit {
  std::vector<VerticalBoxScene> scenes;
  std::vector<PlacedItem> fixed;  // top crossing items and the slices above them
};

/// Cuts the scene at the inner vertical edges of crossing top items. The part
/// below such an item becomes its own scene, so in every result T' holds only
/// bottom items, at most two of them.
CrossingSplit SplitForCrossing(const VerticalBoxScene& scene);

struct RearrangeStats {
  std::size_t steps = 0;      // recursion steps of the crossing case analysis
  std::size_t fallbacks = 0;  // sorted segments rejected by the overlap check
};

/// Shifts top items up and bottom items down, then sorts them so items of one
/// height sit together. Crossing items keep their coordinates. Requires
/// T' to hold only bottom items, at most two (Error(kInvariantBroken)
/// otherwise, or if the result overlaps).
GroupedBoxes RearrangeTall(const VerticalBoxScene& scene, RearrangeStats* stats = nullptr);

struct UnitStackLimits {
  std::size_t max_distinct_heights = SIZE_MAX;
  std::size_t max_per_strip = SIZE_MAX;
};

/// Stacks each strip tallest-first from the bottom of `region`, one strip per
/// unit column, strips ordered by their height counts (tallest height first).
GroupedBoxes StackUnitVerticals(const std::vector<std::vector<PlacedItem>>& strips,
                                const Rect& region, const UnitStackLimits& limits = {});

struct UnitRearrangement {
  Rect b_prime;          // (x, y) of the box, w(B) x floor((1 + 2 eps) h(B))
  GroupedBoxes prime;    // absolute, inside b_prime except crossing items
  Rect b_second;         // at the origin: floor((1 - eps) w(B)) x floor(h(B) / 3)
  GroupedBoxes second;   // relative to b_second
  RearrangeStats stats;
};

/// Rearranges tall items and unit slices into the stretched box B' and the
/// overflow box B''. Error(kGapDeficit) if B' lacks room for the shortest
/// overflow stacks.
UnitRearrangement RearrangeUnit(const VerticalBoxScene& scene, const Rational& epsilon);

struct RestoredVerticals {
  GroupedBoxes groups;
  std::vector<Item> leftovers;
};

/// First-fit of whole vertical items into slice groups of their height.
RestoredVerticals RestoreVerticals(const GroupedBoxes& slice_groups,
                                   const std::vector<Item>& originals);

struct Level2Result {
  BoxPartition partition;   // occupied boxes; free space is left unboxed
  Packing packing;          // of the rounded instance
  Coord opt = 0;
  std::size_t fallbacks = 0;
  std::size_t leftover_verticals = 0;
};

/// Second-level partition and packing from a grid-snapped reference packing
/// of `rounded` (see SnapToGrid). Layers from the bottom: the first-level
/// partition stretched by 1 + 2 eps, the W x eps opt boxes for crossing
/// horizontal and medium items, and a layer holding the B'' boxes and the
/// vertical overflow boxes. Small items go into free space by NFDH.
Level2Result BuildLevel2(const RoundedInstance& rounded,
                         const ItemClassification& classification,
                         const PartitionParams& p, const Packing& reference);

/// Implementation constant c in height <= (4/3 + c eps) opt.
inline constexpr int kLevel2InflationConstant = 8;

struct RepackOutcome {
  GridScaling scaling;
  PartitionParams params;  // opt in scaled units
  ItemClassification classification;
  RoundedInstance rounded;
  Packing snapped;
  Level2Result level2;
};

/// Full pipeline on an unscaled instance: choose delta and mu (unless given),
/// scale, classify, round, snap the reference, and build the level-2 packing.
/// opt defaults to the reference height.
RepackOutcome Repack(const Instance& instance, const Packing& reference,
                     const Rational& epsilon, std::optional<Coord> opt = std::nullopt,
                     std::optional<std::pair<Rational, Rational>> delta_mu = std::nullopt);

}  // namespace stripack
