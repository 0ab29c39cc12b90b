#pragma once

// Preprocessing for the box-partition repacking: OPT guessing, the (delta, mu)
// choice, item classes, height rounding, the first-level box partition and the
// relocation of horizontal/vertical items cut by it.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stripack/geometry.hpp"

namespace stripack {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", an integer, or a decimal such as "0.25" exactly.
Rational ParseRational(std::string_view text);
std::string FormatRational(const Rational& r);
Coord FloorOf(const Rational& r);
Coord CeilOf(const Rational& r);

struct PartitionParams {
  Rational epsilon;
  Rational delta;
  Rational mu;
  Coord opt = 0;  // guessed optimal height
};

/// K = 5 / (epsilon delta)^2, the first-level box count bound.
Rational FirstLevelBoxBound(const PartitionParams& p);

/// epsilon * delta / (2K) = (epsilon delta)^3 / 10.
Rational MuCeiling(const Rational& epsilon, const Rational& delta);

/// Throws Error(kInvalidInput) unless 0 < epsilon <= 1/3, 1 >= delta > mu > 0,
/// mu <= epsilon delta / (2K) and opt >= 1.
void CheckPartitionParams(const PartitionParams& p);

enum class ItemClass { kLarge, kTall, kVertical, kHorizontal, kSmall, kMedium };

std::string_view ItemClassName(ItemClass c);  // "L", "T", "V", "H", "S", "M"
std::optional<ItemClass> ParseItemClass(std::string_view name);

struct ItemClassification {
  std::map<ItemId, ItemClass> classes;

  ItemClass Of(ItemId id) const;
  bool Is(ItemId id, ItemClass c) const { return Of(id) == c; }
  /// Large, tall and vertical items: the ones aligned to the y-grid.
  bool IsGridAligned(ItemId id) const;
  std::vector<ItemId> Members(ItemClass c) const;
};

ItemClass ClassifyItem(const Item& item, Coord W, const PartitionParams& p);
ItemClassification ClassifyItems(const Instance& instance, const PartitionParams& p);

/// Ascending, de-duplicated ceil(lb (1 + epsilon)^k) within [lb, 2 lb], plus 2 lb.
std::vector<Coord> OptCandidates(const Instance& instance, const Rational& epsilon);

/// The first min(count, ceil(2/epsilon) + 2) rungs of the ladder
/// delta_0 = epsilon, delta_{j+1} = (epsilon delta_j)^3 / 10. The exact
/// values grow triply exponentially in size, so ask only for what you need.
std::vector<Rational> DeltaLadder(const Rational& epsilon, std::size_t count);

/// Picks the rung j minimising the area of items with w in [mu_j W, delta_j W)
/// or h in [mu_j opt, delta_j opt), with mu_j = delta_{j+1}; ties go to the
/// smaller j; the scan stops at the first rung with an empty band. Throws Error(kNoFeasiblePair) if the medium area of the pick
/// exceeds epsilon W opt.
PartitionParams ChooseDeltaMu(const Instance& instance, const Rational& epsilon, Coord opt);

/// Total area of the items classified medium.
Rational MediumArea(const Instance& instance, const PartitionParams& p);

/// floor(epsilon delta opt); Error(kDegenerateGrid) when below 1.
Coord GridStep(const PartitionParams& p);
/// floor(epsilon delta W); Error(kDegenerateGrid) when below 1.
Coord CellWidth(const PartitionParams& p, Coord W);

struct RoundedInstance {
  Instance instance;
  Coord grid = 0;
};

/// Rounds every large, tall and vertical item's height up to a multiple of the grid.
RoundedInstance RoundHeights(const Instance& instance,
                             const ItemClassification& classification,
                             const PartitionParams& p);

/// Re-lays `reference` (a packing of the unrounded items) for the rounded
/// instance: items are processed bottom-up, each dropped onto the items that
/// were below it, and grid-aligned items have their y rounded up to the grid.
/// Vertical order of horizontally overlapping items is preserved.
Packing SnapToGrid(const Instance& rounded, const ItemClassification& classification,
                   const Packing& reference, Coord grid);

/// Integer factors that make epsilon delta W and epsilon delta opt (and its
/// (1 + 2 epsilon) stretch) integral after multiplying x by kx and y by ky.
struct GridScaling {
  Coord kx = 1;
  Coord ky = 1;
};
GridScaling GridScaleFactors(Coord W, Coord opt, const Rational& epsilon,
                             const Rational& delta);
Instance ScaleInstance(const Instance& instance, const GridScaling& s);
Packing ScalePacking(const Packing& packing, const GridScaling& s);

struct BoxPartition {
  Coord width = 0;
  Coord height = 0;
  std::vector<Box> boxes;
  std::map<ItemId, std::size_t> assignment;  // large item -> its box
};

struct CrossingSets {
  std::vector<ItemId> horizontal;  // H'
  std::vector<ItemId> vertical;    // V'
  std::vector<ItemId> tall;        // T'
};

struct Level1Result {
  BoxPartition partition;
  CrossingSets crossing;
  Coord grid = 0;
  Coord cell_width = 0;
};

/// First-level partition of W x A into large, horizontal and vertical boxes,
/// where A = max(opt, reference height) rounded up to the grid. Requires
/// every large, tall and vertical item of `reference` to sit on the y-grid
/// (Error(kGridViolation) otherwise).
Level1Result BuildLevel1Partition(const Instance& rounded,
                                  const ItemClassification& classification,
                                  const PartitionParams& p, const Packing& reference);

/// Ids of tall/vertical items cut by a horizontal box edge, or horizontal items
/// cut by a vertical one, or items of those classes lying in a box of the
/// wrong kind.
std::vector<ItemId> CrossingRuleViolations(const BoxPartition& partition,
                                           const Instance& instance,
                                           const ItemClassification& classification,
                                           const Packing& packing);

/// Items packed inside a box. Item rects use the same frame as box.rect.
struct PackedBox {
  Box box;
  std::vector<PlacedItem> items;
  void Translate(Coord dx, Coord dy);
};

struct RelocatedItems {
  std::optional<PackedBox> horizontal;  // W x floor(epsilon opt)
  std::vector<PackedBox> vertical;      // one per distinct height
};

/// Stacks H' left-aligned by non-increasing width in a W x floor(eps opt) box
/// and groups V' by height into boxes laid side by side from x = 0.
/// Error(kCapacityExceeded) if the stack is too tall or the vertical boxes are
/// wider than floor(eps W / 3) in total.
RelocatedItems RelocateCrossing(const Instance& rounded, const std::vector<ItemId>& h_prime,
                                const std::vector<ItemId>& v_prime,
                                const PartitionParams& p);

}  // namespace stripack
