#include <algorithm>
#include <map>
#include <set>

#include "stripack/error.hpp"
#include "stripack/repack.hpp"

namespace stripack {

namespace {

bool SharesColumn(const Rect& a, const Rect& b) { return a.x < b.right() && b.x < a.right(); }

VerticalBoxScene BuildScene(const Box& box, const std::vector<PlacedItem>& tall,
                            std::vector<PlacedItem> slices) {
  VerticalBoxScene scene;
  scene.box = box;
  for (const PlacedItem& it : tall) {
    if (!InteriorsOverlap(it.rect, box.rect)) {
      throw Error(ErrorCode::kInvariantBroken,
                  "tall item " + std::to_string(it.id) + " does not meet the box");
    }
    if (it.rect.y < box.rect.y || it.rect.top() > box.rect.top()) {
      throw Error(ErrorCode::kInvariantBroken,
                  "tall item " + std::to_string(it.id) + " is cut by a horizontal box edge");
    }
    bool above = false;
    bool below = false;
    for (const PlacedItem& other : tall) {
      if (other.id == it.id || !SharesColumn(it.rect, other.rect)) continue;
      if (other.rect.y >= it.rect.top()) above = true;
      if (other.rect.top() <= it.rect.y) below = true;
    }
    if (above && below) {
      throw Error(ErrorCode::kInvariantBroken,
                  "three tall items share a column at item " + std::to_string(it.id));
    }
    (below ? scene.top : scene.bottom).push_back(it);
    if (!box.rect.Contains(it.rect)) scene.crossing.push_back(it.id);
  }
  auto by_x = [](const PlacedItem& a, const PlacedItem& b) {
    if (a.rect.x != b.rect.x) return a.rect.x < b.rect.x;
    return a.rect.y < b.rect.y;
  };
  std::sort(scene.top.begin(), scene.top.end(), by_x);
  std::sort(scene.bottom.begin(), scene.bottom.end(), by_x);
  std::sort(scene.crossing.begin(), scene.crossing.end());
  std::sort(slices.begin(), slices.end(), by_x);
  scene.unit_verticals = std::move(slices);
  return scene;
}

}  // namespace

bool VerticalBoxScene::IsCrossing(ItemId id) const {
  return std::binary_search(crossing.begin(), crossing.end(), id);
}

std::vector<PlacedItem> VerticalBoxScene::TallItems() const {
  std::vector<PlacedItem> all = top;
  all.insert(all.end(), bottom.begin(), bottom.end());
  return all;
}

VerticalBoxScene MakeScene(const Box& box, const std::vector<PlacedItem>& tall,
                           const std::vector<PlacedItem>& verticals) {
  std::vector<PlacedItem> slices;
  for (const PlacedItem& v : verticals) {
    if (!box.rect.Contains(v.rect)) {
      throw Error(ErrorCode::kInvariantBroken,
                  "vertical item " + std::to_string(v.id) + " is not inside the box");
    }
    for (Coord k = 0; k < v.rect.w; ++k) {
      slices.push_back({v.id, {v.rect.x + k, v.rect.y, 1, v.rect.h}});
    }
  }
  return BuildScene(box, tall, std::move(slices));
}

std::vector<PlacedItem> GroupedBoxes::Items() const {
  std::vector<PlacedItem> out;
  for (const ItemGroup& g : groups) out.insert(out.end(), g.members.begin(), g.members.end());
  return out;
}

GroupedBoxes GroupAdjacent(std::vector<PlacedItem> items) {
  std::sort(items.begin(), items.end(), [](const PlacedItem& a, const PlacedItem& b) {
    if (a.rect.y != b.rect.y) return a.rect.y < b.rect.y;
    if (a.rect.h != b.rect.h) return a.rect.h < b.rect.h;
    if (a.rect.x != b.rect.x) return a.rect.x < b.rect.x;
    return a.id < b.id;
  });
  GroupedBoxes out;
  for (const PlacedItem& it : items) {
    if (!out.groups.empty()) {
      ItemGroup& g = out.groups.back();
      if (g.box.rect.y == it.rect.y && g.height == it.rect.h &&
          g.box.rect.right() == it.rect.x) {
        g.box.rect.w += it.rect.w;
        g.members.push_back(it);
        continue;
      }
    }
    out.groups.push_back({{it.rect, BoxTag::kVertical}, it.rect.h, {it}});
  }
  return out;
}

CrossingSplit SplitForCrossing(const VerticalBoxScene& scene) {
  const Rect& B = scene.box.rect;
  CrossingSplit out;
  std::vector<Rect> regions;
  Coord mid0 = B.x;
  Coord mid1 = B.right();
  std::vector<const PlacedItem*> crossing_top;
  for (const PlacedItem& t : scene.top) {
    if (scene.IsCrossing(t.id)) crossing_top.push_back(&t);
  }
  for (const PlacedItem* t : crossing_top) {
    out.fixed.push_back(*t);
    const Coord x0 = std::max(t->rect.x, B.x);
    const Coord x1 = std::min(t->rect.right(), B.right());
    if (t->rect.y > B.y) regions.push_back({x0, B.y, x1 - x0, t->rect.y - B.y});
    if (t->rect.x < B.x) mid0 = std::max(mid0, x1);
    if (t->rect.right() > B.right()) mid1 = std::min(mid1, x0);
  }
  if (crossing_top.empty()) {
    out.scenes.push_back(scene);
    return out;
  }
  if (mid0 < mid1) regions.push_back({mid0, B.y, mid1 - mid0, B.h});
  std::sort(regions.begin(), regions.end(),
            [](const Rect& a, const Rect& b) { return a.x < b.x; });

  std::vector<PlacedItem> tall;
  for (const PlacedItem& it : scene.TallItems()) {
    const bool split_off = std::any_of(crossing_top.begin(), crossing_top.end(),
                                       [&](const PlacedItem* t) { return t->id == it.id; });
    if (!split_off) tall.push_back(it);
  }
  std::vector<bool> used(scene.unit_verticals.size(), false);
  for (const Rect& r : regions) {
    std::vector<PlacedItem> sub_tall;
    for (const PlacedItem& it : tall) {
      if (InteriorsOverlap(it.rect, r)) sub_tall.push_back(it);
    }
    std::vector<PlacedItem> sub_slices;
    for (std::size_t i = 0; i < scene.unit_verticals.size(); ++i) {
      if (r.Contains(scene.unit_verticals[i].rect)) {
        sub_slices.push_back(scene.unit_verticals[i]);
        used[i] = true;
      }
    }
    out.scenes.push_back(BuildScene({r, BoxTag::kVertical}, sub_tall, std::move(sub_slices)));
  }
  for (std::size_t i = 0; i < scene.unit_verticals.size(); ++i) {
    if (!used[i]) out.fixed.push_back(scene.unit_verticals[i]);
  }
  return out;
}

GroupedBoxes StackUnitVerticals(const std::vector<std::vector<PlacedItem>>& strips,
                                const Rect& region, const UnitStackLimits& limits) {
  std::set<Coord, std::greater<>> heights;
  for (const auto& strip : strips) {
    Coord total = 0;
    if (strip.size() > limits.max_per_strip) {
      throw Error(ErrorCode::kStripOverflow,
                  "strip holds " + std::to_string(strip.size()) + " items");
    }
    for (const PlacedItem& it : strip) {
      if (it.rect.w != 1) {
        throw Error(ErrorCode::kInvalidInput,
                    "item " + std::to_string(it.id) + " is not of unit width");
      }
      heights.insert(it.rect.h);
      total += it.rect.h;
    }
    if (total > region.h) {
      throw Error(ErrorCode::kStripOverflow, "strip of height " + std::to_string(total) +
                                                 " exceeds region height " +
                                                 std::to_string(region.h));
    }
  }
  if (heights.size() > limits.max_distinct_heights) {
    throw Error(ErrorCode::kTooManyDistinctHeights,
                std::to_string(heights.size()) + " distinct heights");
  }
  const Coord nonempty = std::count_if(strips.begin(), strips.end(),
                                       [](const auto& s) { return !s.empty(); });
  if (nonempty > region.w) {
    throw Error(ErrorCode::kStripOverflow, std::to_string(nonempty) +
                                               " strips exceed region width " +
                                               std::to_string(region.w));
  }
  const std::vector<Coord> levels(heights.begin(), heights.end());
  std::vector<std::pair<std::vector<std::size_t>, std::size_t>> keyed;
  for (std::size_t i = 0; i < strips.size(); ++i) {
    if (strips[i].empty()) continue;
    std::vector<std::size_t> counts(levels.size(), 0);
    for (const PlacedItem& it : strips[i]) {
      counts[std::find(levels.begin(), levels.end(), it.rect.h) - levels.begin()]++;
    }
    keyed.emplace_back(std::move(counts), i);
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<PlacedItem> placed;
  Coord x = region.x;
  for (const auto& [counts, index] : keyed) {
    std::vector<PlacedItem> strip = strips[index];
    std::sort(strip.begin(), strip.end(), [](const PlacedItem& a, const PlacedItem& b) {
      if (a.rect.h != b.rect.h) return a.rect.h > b.rect.h;
      return a.id < b.id;
    });
    Coord y = region.y;
    for (const PlacedItem& it : strip) {
      placed.push_back({it.id, {x, y, 1, it.rect.h}});
      y += it.rect.h;
    }
    ++x;
  }
  return GroupAdjacent(std::move(placed));
}

RestoredVerticals RestoreVerticals(const GroupedBoxes& slice_groups,
                                   const std::vector<Item>& originals) {
  RestoredVerticals out;
  std::vector<ItemGroup> groups;
  std::vector<Coord> used;
  for (const ItemGroup& g : slice_groups.groups) {
    groups.push_back({g.box, g.height, {}});
    used.push_back(0);
  }
  for (const Item& item : originals) {
    bool placed = false;
    for (std::size_t k = 0; k < groups.size() && !placed; ++k) {
      if (groups[k].height != item.h || used[k] + item.w > groups[k].box.rect.w) continue;
      const Rect& b = groups[k].box.rect;
      groups[k].members.push_back({item.id, {b.x + used[k], b.y, item.w, item.h}});
      used[k] += item.w;
      placed = true;
    }
    if (!placed) out.leftovers.push_back(item);
  }
  for (ItemGroup& g : groups) {
    if (!g.members.empty()) out.groups.groups.push_back(std::move(g));
  }
  return out;
}

}  // namespace stripack
