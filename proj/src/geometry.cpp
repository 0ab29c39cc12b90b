#include "stripack/geometry.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "stripack/error.hpp"

namespace stripack {

std::string_view BoxTagName(BoxTag tag) {
  switch (tag) {
    case BoxTag::kLarge: return "large";
    case BoxTag::kHorizontal: return "horizontal";
    case BoxTag::kVertical: return "vertical";
    case BoxTag::kSpare: return "spare";
  }
  return "spare";
}

std::optional<BoxTag> ParseBoxTag(std::string_view name) {
  if (name == "large") return BoxTag::kLarge;
  if (name == "horizontal") return BoxTag::kHorizontal;
  if (name == "vertical") return BoxTag::kVertical;
  if (name == "spare") return BoxTag::kSpare;
  return std::nullopt;
}

void CheckInstance(const Instance& instance) {
  if (instance.W < 1) {
    throw Error(ErrorCode::kInvalidInput, "strip width must be positive");
  }
  std::unordered_set<ItemId> seen;
  for (const Item& item : instance.items) {
    if (item.w < 1 || item.h < 1) {
      throw Error(ErrorCode::kInvalidInput,
                  "item " + std::to_string(item.id) + " has a non-positive side");
    }
    if (item.w > instance.W) {
      throw Error(ErrorCode::kInvalidInput,
                  "item " + std::to_string(item.id) + " is wider than the strip");
    }
    if (!seen.insert(item.id).second) {
      throw Error(ErrorCode::kInvalidInput,
                  "duplicate item id " + std::to_string(item.id));
    }
  }
}

std::unordered_map<ItemId, std::size_t> IndexById(const Instance& instance) {
  std::unordered_map<ItemId, std::size_t> index;
  index.reserve(instance.items.size());
  for (std::size_t i = 0; i < instance.items.size(); ++i) {
    index.emplace(instance.items[i].id, i);
  }
  return index;
}

const Item& FindItem(const Instance& instance, ItemId id) {
  for (const Item& item : instance.items) {
    if (item.id == id) return item;
  }
  throw Error(ErrorCode::kInvalidInput, "unknown item id " + std::to_string(id));
}

std::vector<PlacedItem> Resolve(const Instance& instance, const Packing& packing) {
  const auto index = IndexById(instance);
  std::vector<PlacedItem> placed;
  placed.reserve(packing.placements.size());
  for (const Placement& p : packing.placements) {
    auto it = index.find(p.id);
    if (it == index.end()) {
      throw Error(ErrorCode::kInvalidInput, "unknown item id " + std::to_string(p.id));
    }
    const Item& item = instance.items[it->second];
    placed.push_back({p.id, {p.x, p.y, item.w, item.h}});
  }
  return placed;
}

Coord MaxTop(const std::vector<PlacedItem>& placed) {
  Coord top = 0;
  for (const PlacedItem& p : placed) top = std::max(top, p.rect.top());
  return top;
}

Packing ToPacking(const std::vector<PlacedItem>& placed) {
  Packing packing;
  packing.placements.reserve(placed.size());
  for (const PlacedItem& p : placed) {
    packing.placements.push_back({p.id, p.rect.x, p.rect.y});
  }
  packing.height = MaxTop(placed);
  return packing;
}

std::string_view ViolationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kUnknownItemId: return "UnknownItemId";
    case ViolationKind::kMissingItem: return "MissingItem";
    case ViolationKind::kDuplicatePlacement: return "DuplicatePlacement";
    case ViolationKind::kNegativeCoordinate: return "NegativeCoordinate";
    case ViolationKind::kOutOfStrip: return "OutOfStrip";
    case ViolationKind::kOverlap: return "Overlap";
    case ViolationKind::kHeightMismatch: return "HeightMismatch";
  }
  return "Unknown";
}

std::size_t ValidationReport::Count(ViolationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(),
                    [kind](const Violation& v) { return v.kind == kind; }));
}

std::string ValidationReport::ToString() const {
  std::ostringstream out;
  if (ok()) {
    out << "valid, height " << height;
    return out.str();
  }
  out << violations.size() << " violation(s):";
  for (const Violation& v : violations) {
    out << "\n  " << ViolationKindName(v.kind) << " id=" << v.first;
    if (v.kind == ViolationKind::kOverlap) out << " other=" << v.second;
    if (!v.detail.empty()) out << " (" << v.detail << ")";
  }
  return out.str();
}

std::vector<std::pair<ItemId, ItemId>> FindOverlaps(
    const std::vector<PlacedItem>& placed) {
  std::vector<std::size_t> order(placed.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (placed[a].rect.x != placed[b].rect.x) return placed[a].rect.x < placed[b].rect.x;
    return a < b;
  });
  std::vector<std::pair<ItemId, ItemId>> overlaps;
  std::vector<std::size_t> active;
  for (std::size_t idx : order) {
    const Rect& r = placed[idx].rect;
    std::erase_if(active, [&](std::size_t a) { return placed[a].rect.right() <= r.x; });
    for (std::size_t a : active) {
      if (InteriorsOverlap(placed[a].rect, r)) {
        overlaps.emplace_back(placed[a].id, placed[idx].id);
      }
    }
    active.push_back(idx);
  }
  return overlaps;
}

ValidationReport ValidatePacking(const Instance& instance, const Packing& packing) {
  ValidationReport report;
  const auto index = IndexById(instance);
  std::vector<int> times_placed(instance.items.size(), 0);
  std::vector<PlacedItem> placed;
  placed.reserve(packing.placements.size());

  for (const Placement& p : packing.placements) {
    auto it = index.find(p.id);
    if (it == index.end()) {
      report.violations.push_back({ViolationKind::kUnknownItemId, p.id, 0, ""});
      continue;
    }
    if (++times_placed[it->second] == 2) {
      report.violations.push_back({ViolationKind::kDuplicatePlacement, p.id, 0, ""});
    }
    const Item& item = instance.items[it->second];
    if (p.x < 0 || p.y < 0) {
      report.violations.push_back({ViolationKind::kNegativeCoordinate, p.id, 0, ""});
    }
    if (p.x + item.w > instance.W) {
      report.violations.push_back(
          {ViolationKind::kOutOfStrip, p.id, 0,
           "x + w = " + std::to_string(p.x + item.w) + " > W"});
    }
    placed.push_back({p.id, {p.x, p.y, item.w, item.h}});
  }
  for (std::size_t i = 0; i < instance.items.size(); ++i) {
    if (times_placed[i] == 0) {
      report.violations.push_back(
          {ViolationKind::kMissingItem, instance.items[i].id, 0, ""});
    }
  }
  for (const auto& [a, b] : FindOverlaps(placed)) {
    report.violations.push_back({ViolationKind::kOverlap, a, b, ""});
  }
  report.height = MaxTop(placed);
  if (report.height != packing.height) {
    report.violations.push_back(
        {ViolationKind::kHeightMismatch, 0, 0,
         "declared " + std::to_string(packing.height) + ", actual " +
             std::to_string(report.height)});
  }
  return report;
}

std::int64_t TotalArea(const Instance& instance) {
  std::int64_t area = 0;
  for (const Item& item : instance.items) {
    area = CheckedAdd(area, CheckedMul(item.w, item.h));
  }
  return area;
}

Coord AreaLowerBound(const Instance& instance) {
  if (instance.W < 1) {
    throw Error(ErrorCode::kInvalidInput, "strip width must be positive");
  }
  const std::int64_t area = TotalArea(instance);
  Coord bound = (area + instance.W - 1) / instance.W;
  for (const Item& item : instance.items) bound = std::max(bound, item.h);
  return bound;
}

}  // namespace stripack
