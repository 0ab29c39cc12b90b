#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stripack {

using Coord = std::int64_t;
using ItemId = std::int64_t;

/// Axis-aligned rectangle [x, x+w) x [y, y+h) with integer corners.
struct Rect {
  Coord x = 0;
  Coord y = 0;
  Coord w = 0;
  Coord h = 0;

  Coord right() const { return x + w; }
  Coord top() const { return y + h; }
  bool Contains(const Rect& other) const {
    return other.x >= x && other.y >= y && other.right() <= right() &&
           other.top() <= top();
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// True iff the open rectangles intersect; shared edges do not count.
inline bool InteriorsOverlap(const Rect& a, const Rect& b) {
  return a.x < b.right() && b.x < a.right() && a.y < b.top() && b.y < a.top();
}

struct Item {
  ItemId id = 0;
  Coord w = 1;
  Coord h = 1;
  friend bool operator==(const Item&, const Item&) = default;
};

struct Instance {
  Coord W = 1;
  std::vector<Item> items;
};

struct Placement {
  ItemId id = 0;
  Coord x = 0;
  Coord y = 0;
  friend bool operator==(const Placement&, const Placement&) = default;
};

struct Packing {
  std::vector<Placement> placements;
  Coord height = 0;
  friend bool operator==(const Packing&, const Packing&) = default;
};

/// An item together with its position; the working unit of the repacking code.
struct PlacedItem {
  ItemId id = 0;
  Rect rect;
  friend bool operator==(const PlacedItem&, const PlacedItem&) = default;
};

enum class BoxTag { kLarge, kHorizontal, kVertical, kSpare };

std::string_view BoxTagName(BoxTag tag);
std::optional<BoxTag> ParseBoxTag(std::string_view name);

struct Box {
  Rect rect;
  BoxTag tag = BoxTag::kSpare;
  friend bool operator==(const Box&, const Box&) = default;
};

/// Throws Error(kInvalidInput) unless W >= 1, every item is 1 <= w <= W,
/// h >= 1, and ids are distinct.
void CheckInstance(const Instance& instance);

/// id -> index into instance.items.
std::unordered_map<ItemId, std::size_t> IndexById(const Instance& instance);

const Item& FindItem(const Instance& instance, ItemId id);

/// Resolves every placement to a PlacedItem, in placement order.
/// Throws Error(kInvalidInput) on unknown ids.
std::vector<PlacedItem> Resolve(const Instance& instance, const Packing& packing);

/// Builds a packing from placed rectangles; height is the max top edge.
Packing ToPacking(const std::vector<PlacedItem>& placed);

Coord MaxTop(const std::vector<PlacedItem>& placed);

enum class ViolationKind {
  kUnknownItemId,
  kMissingItem,
  kDuplicatePlacement,
  kNegativeCoordinate,
  kOutOfStrip,
  kOverlap,
  kHeightMismatch,
};

std::string_view ViolationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  ItemId first = 0;
  ItemId second = 0;  // only meaningful for kOverlap
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  Coord height = 0;  // max (y + h) over the resolvable placements

  bool ok() const { return violations.empty(); }
  std::size_t Count(ViolationKind kind) const;
  std::string ToString() const;
};

/// Checks every packing invariant and lists all violations found.
ValidationReport ValidatePacking(const Instance& instance, const Packing& packing);

/// Pairs of ids whose open rectangles intersect. Sweep over x.
std::vector<std::pair<ItemId, ItemId>> FindOverlaps(
    const std::vector<PlacedItem>& placed);

std::int64_t TotalArea(const Instance& instance);

/// max(ceil(total_area / W), max item height).
Coord AreaLowerBound(const Instance& instance);

}  // namespace stripack
