#include <algorithm>
#include <map>
#include <set>

#include "stripack/error.hpp"
#include "stripack/repack.hpp"

namespace stripack {

namespace {

// Next-fit decreasing-height shelves inside a fixed rectangle.
class ShelfFill {
 public:
  explicit ShelfFill(const Rect& area) : area_(area), shelf_y_(area.y), cursor_(area.x) {}

  std::optional<Rect> Place(Coord w, Coord h) {
    if (shelf_h_ > 0 && h <= shelf_h_ && cursor_ + w <= area_.right()) {
      const Rect r{cursor_, shelf_y_, w, h};
      cursor_ += w;
      return r;
    }
    const Coord y = shelf_y_ + shelf_h_;
    if (w > area_.w || y + h > area_.top()) return std::nullopt;
    shelf_y_ = y;
    shelf_h_ = h;
    cursor_ = area_.x + w;
    return Rect{area_.x, y, w, h};
  }

 private:
  Rect area_;
  Coord shelf_y_;
  Coord shelf_h_ = 0;
  Coord cursor_;
};

std::vector<Item> ByHeightDesc(std::vector<Item> items) {
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.h != b.h) return a.h > b.h;
    return a.id < b.id;
  });
  return items;
}

class Assembly {
 public:
  explicit Assembly(const Instance& instance) : instance_(instance) {}

  void Put(ItemId id, const Rect& r) {
    const Item& item = FindItem(instance_, id);
    if (item.w != r.w || item.h != r.h) {
      throw Error(ErrorCode::kInvariantBroken,
                  "item " + std::to_string(id) + " placed with the wrong size");
    }
    if (!placed_.emplace(id, r).second) {
      throw Error(ErrorCode::kInvariantBroken, "item " + std::to_string(id) + " placed twice");
    }
  }
  void AddBox(const Rect& r, BoxTag tag) { boxes_.push_back({r, tag}); }

  void AddGroups(const GroupedBoxes& groups, Coord dx, Coord dy) {
    for (const ItemGroup& g : groups.groups) {
      Rect b = g.box.rect;
      b.x += dx;
      b.y += dy;
      AddBox(b, BoxTag::kVertical);
      for (const PlacedItem& m : g.members) {
        Put(m.id, {m.rect.x + dx, m.rect.y + dy, m.rect.w, m.rect.h});
      }
    }
  }

  bool Has(ItemId id) const { return placed_.count(id) > 0; }
  const std::vector<Box>& boxes() const { return boxes_; }

  Packing ToPacking() const {
    Packing packing;
    for (const Item& item : instance_.items) {
      auto it = placed_.find(item.id);
      if (it == placed_.end()) {
        throw Error(ErrorCode::kInvariantBroken,
                    "item " + std::to_string(item.id) + " was never placed");
      }
      packing.placements.push_back({item.id, it->second.x, it->second.y});
      packing.height = std::max(packing.height, it->second.top());
    }
    return packing;
  }

 private:
  const Instance& instance_;
  std::map<ItemId, Rect> placed_;
  std::vector<Box> boxes_;
};

}  // namespace

Level2Result BuildLevel2(const RoundedInstance& rounded,
                         const ItemClassification& classification,
                         const PartitionParams& p, const Packing& reference) {
  CheckPartitionParams(p);
  const Instance& inst = rounded.instance;
  const Coord W = inst.W;
  const Rational s = 1 + 2 * p.epsilon;
  const Coord g = rounded.grid;
  if (g != GridStep(p) || denominator(Rational(s * g)) != 1) {
    throw Error(ErrorCode::kInvalidInput,
                "grid step must equal eps delta opt and stay integral when stretched");
  }
  auto stretch = [&](Coord y) { return FloorOf(s * y); };

  const Level1Result level1 = BuildLevel1Partition(inst, classification, p, reference);
  const CrossingSets& crossing = level1.crossing;
  const std::set<ItemId> h_prime(crossing.horizontal.begin(), crossing.horizontal.end());
  const std::set<ItemId> v_prime(crossing.vertical.begin(), crossing.vertical.end());
  std::map<ItemId, Rect> where;
  for (const PlacedItem& it : Resolve(inst, reference)) where[it.id] = it.rect;

  Assembly out(inst);
  Level2Result result;
  result.opt = p.opt;
  std::vector<Rect> small_areas;
  std::vector<Rect> small_strips;

  // Layer 0: the first-level partition stretched by 1 + 2 eps.
  std::vector<const Box*> vertical_boxes;
  for (const Box& box : level1.partition.boxes) {
    const Rect& b = box.rect;
    const Rect sb{b.x, stretch(b.y), b.w, stretch(b.top()) - stretch(b.y)};
    if (box.tag == BoxTag::kVertical) {
      vertical_boxes.push_back(&box);
      continue;
    }
    out.AddBox(sb, box.tag);
    if (box.tag == BoxTag::kLarge) {
      for (const auto& [id, index] : level1.partition.assignment) {
        if (&level1.partition.boxes[index] == &box) out.Put(id, {b.x, sb.y, b.w, b.h});
      }
      continue;
    }
    bool empty = true;
    for (const auto& [id, r] : where) {
      if (!classification.Is(id, ItemClass::kHorizontal) || h_prime.count(id)) continue;
      if (!b.Contains(r)) continue;
      out.Put(id, {r.x, sb.y + (r.y - b.y), r.w, r.h});
      empty = false;
    }
    if (empty) {
      small_areas.push_back(sb);
    } else if (sb.h > b.h) {
      small_strips.push_back({sb.x, sb.y + b.h, sb.w, sb.h - b.h});
    }
  }
  small_areas.insert(small_areas.end(), small_strips.begin(), small_strips.end());

  GroupedBoxes slice_groups;
  std::set<ItemId> fixed_done;
  struct Overflow {
    Rect origin;
    GroupedBoxes groups;
  };
  std::vector<Overflow> overflow;
  for (const Box* box : vertical_boxes) {
    const Rect& b = box->rect;
    std::vector<PlacedItem> tall;
    std::vector<PlacedItem> verticals;
    for (const auto& [id, r] : where) {
      if (!InteriorsOverlap(r, b)) continue;
      if (classification.Is(id, ItemClass::kTall)) tall.push_back({id, r});
      if (classification.Is(id, ItemClass::kVertical) && !v_prime.count(id)) {
        verticals.push_back({id, r});
      }
    }
    const VerticalBoxScene scene = MakeScene(*box, tall, verticals);
    const UnitRearrangement ur = RearrangeUnit(scene, p.epsilon);
    result.fallbacks += ur.stats.fallbacks;
    const Coord dy = stretch(b.y) - b.y;
    for (const ItemGroup& grp : ur.prime.groups) {
      const ItemId first = grp.members.front().id;
      if (classification.Is(first, ItemClass::kVertical)) {
        ItemGroup moved = grp;
        moved.box.rect.y += dy;
        for (PlacedItem& m : moved.members) m.rect.y += dy;
        slice_groups.groups.push_back(std::move(moved));
        continue;
      }
      if (scene.IsCrossing(first)) {
        if (!fixed_done.insert(first).second) continue;
        const Rect& r = where.at(first);
        out.AddBox({r.x, stretch(r.y), r.w, r.h}, BoxTag::kVertical);
        out.Put(first, {r.x, stretch(r.y), r.w, r.h});
        continue;
      }
      GroupedBoxes single;
      single.groups.push_back(grp);
      out.AddGroups(single, 0, dy);
    }
    if (!ur.second.groups.empty()) {
      overflow.push_back({{FloorOf((1 - p.epsilon) * b.x), FloorOf(Rational(b.y, 3)),
                           ur.b_second.w, ur.b_second.h},
                          ur.second});
    }
  }

  // Layer 1: crossing horizontal items, then the medium box.
  Coord y = stretch(level1.partition.height);
  const Coord band = FloorOf(p.epsilon * p.opt);
  const RelocatedItems relocated = RelocateCrossing(inst, crossing.horizontal,
                                                    crossing.vertical, p);
  std::vector<std::pair<Rect, Coord>> tail_areas;  // area, first free y
  if (relocated.horizontal) {
    PackedBox hb = *relocated.horizontal;
    hb.Translate(0, y);
    out.AddBox(hb.box.rect, BoxTag::kHorizontal);
    Coord stack_top = y;
    for (const PlacedItem& it : hb.items) {
      out.Put(it.id, it.rect);
      stack_top = std::max(stack_top, it.rect.top());
    }
    small_areas.push_back({0, stack_top, W, y + band - stack_top});
    y += band;
  }
  std::vector<Item> medium;
  std::vector<Item> small;
  for (const Item& item : inst.items) {
    if (classification.Is(item.id, ItemClass::kMedium)) medium.push_back(item);
    if (classification.Is(item.id, ItemClass::kSmall)) small.push_back(item);
  }
  const Coord third_w = FloorOf(p.epsilon * W / 3);
  const Coord x_base = FloorOf((1 - p.epsilon) * W);
  std::vector<Item> medium_rest;
  std::optional<ShelfFill> medium_fill;
  Rect medium_box{0, y, W, band};
  if (!medium.empty() || !small.empty()) {
    medium_fill.emplace(medium_box);
    for (const Item& item : ByHeightDesc(medium)) {
      if (auto r = medium_fill->Place(item.w, item.h)) {
        out.Put(item.id, *r);
      } else {
        medium_rest.push_back(item);
      }
    }
  }

  // Small items: free rows of layer 0, the rest of the H' box, the medium box.
  std::size_t area_index = 0;
  std::optional<ShelfFill> fill;
  if (!small_areas.empty()) fill.emplace(small_areas[0]);
  bool medium_used = !medium.empty();
  for (const Item& item : ByHeightDesc(small)) {
    std::optional<Rect> r;
    while (!r) {
      if (fill) r = fill->Place(item.w, item.h);
      if (r) break;
      if (area_index + 1 < small_areas.size()) {
        fill.emplace(small_areas[++area_index]);
        continue;
      }
      if (medium_fill) {
        r = medium_fill->Place(item.w, item.h);
        medium_used = true;
      }
      if (!r) {
        throw Error(ErrorCode::kSmallItemOverflow,
                    "no free space for small item " + std::to_string(item.id));
      }
    }
    out.Put(item.id, *r);
  }
  if (medium_used) {
    out.AddBox(medium_box, BoxTag::kSpare);
    y += band;
  }

  // Layer 2: B'' images, then columns for medium overflow, V' and leftovers.
  const Coord layer2 = y;
  for (const Overflow& o : overflow) {
    GroupedBoxes moved = o.groups;
    for (ItemGroup& grp : moved.groups) {
      grp.box.rect.x += o.origin.x;
      grp.box.rect.y += o.origin.y + layer2;
      for (PlacedItem& m : grp.members) {
        m.rect.x += o.origin.x;
        m.rect.y += o.origin.y + layer2;
      }
      slice_groups.groups.push_back(std::move(grp));
    }
  }
  if (!medium_rest.empty()) {
    const Rect m2{x_base, layer2, third_w, FloorOf(Rational(p.opt, 3))};
    ShelfFill second(m2);
    for (const Item& item : medium_rest) {
      auto r = second.Place(item.w, item.h);
      if (!r) {
        throw Error(ErrorCode::kCapacityExceeded,
                    "medium item " + std::to_string(item.id) + " fits in neither medium box");
      }
      out.Put(item.id, *r);
    }
    out.AddBox(m2, BoxTag::kSpare);
  }
  for (PackedBox vb : relocated.vertical) {
    vb.Translate(x_base + third_w, layer2);
    out.AddBox(vb.box.rect, BoxTag::kVertical);
    for (const PlacedItem& it : vb.items) out.Put(it.id, it.rect);
  }

  std::vector<Item> originals;
  for (const Item& item : inst.items) {
    if (classification.Is(item.id, ItemClass::kVertical) && !v_prime.count(item.id)) {
      originals.push_back(item);
    }
  }
  const RestoredVerticals restored = RestoreVerticals(slice_groups, originals);
  out.AddGroups(restored.groups, 0, 0);
  result.leftover_verticals = restored.leftovers.size();
  Coord lx = x_base + 2 * third_w;
  std::vector<PlacedItem> leftovers;
  for (const Item& item : ByHeightDesc(restored.leftovers)) {
    leftovers.push_back({item.id, {lx, layer2, item.w, item.h}});
    lx += item.w;
  }
  if (lx > x_base + 3 * third_w) {
    throw Error(ErrorCode::kCapacityExceeded,
                "leftover vertical items need width " + std::to_string(lx - x_base - 2 * third_w));
  }
  out.AddGroups(GroupAdjacent(std::move(leftovers)), 0, 0);

  result.packing = out.ToPacking();
  const ValidationReport report = ValidatePacking(inst, result.packing);
  if (!report.ok()) {
    throw Error(ErrorCode::kInvariantBroken, "level-2 packing invalid: " + report.ToString());
  }
  result.partition.width = W;
  result.partition.height = result.packing.height;
  result.partition.boxes = out.boxes();
  for (std::size_t i = 0; i < result.partition.boxes.size(); ++i) {
    const Box& box = result.partition.boxes[i];
    if (box.tag != BoxTag::kLarge) continue;
    for (const PlacedItem& it : Resolve(inst, result.packing)) {
      if (classification.Is(it.id, ItemClass::kLarge) && it.rect.x == box.rect.x &&
          it.rect.y == box.rect.y && it.rect.w == box.rect.w) {
        result.partition.assignment[it.id] = i;
      }
    }
  }
  return result;
}

RepackOutcome Repack(const Instance& instance, const Packing& reference,
                     const Rational& epsilon, std::optional<Coord> opt,
                     std::optional<std::pair<Rational, Rational>> delta_mu) {
  CheckInstance(instance);
  const ValidationReport report = ValidatePacking(instance, reference);
  if (!report.ok()) {
    throw Error(ErrorCode::kInvalidInput, "reference packing is invalid: " + report.ToString());
  }
  const Coord guess = opt.value_or(report.height);
  RepackOutcome out;
  if (delta_mu) {
    out.params = {epsilon, delta_mu->first, delta_mu->second, guess};
    CheckPartitionParams(out.params);
  } else {
    out.params = ChooseDeltaMu(instance, epsilon, guess);
  }
  out.scaling = GridScaleFactors(instance.W, guess, epsilon, out.params.delta);
  const Instance scaled = ScaleInstance(instance, out.scaling);
  out.params.opt = CheckedMul(guess, out.scaling.ky);
  out.classification = ClassifyItems(scaled, out.params);
  out.rounded = RoundHeights(scaled, out.classification, out.params);
  out.snapped = SnapToGrid(out.rounded.instance, out.classification,
                           ScalePacking(reference, out.scaling), out.rounded.grid);
  out.level2 = BuildLevel2(out.rounded, out.classification, out.params, out.snapped);
  return out;
}

}  // namespace stripack
