#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "stripack/error.hpp"
#include "stripack/repack.hpp"

namespace stripack {

namespace {

struct Node {
  PlacedItem item;
  bool top = false;
  bool fixed = false;
};

bool Crosses(const Rect& r, Coord line) { return r.x < line && line < r.right(); }

class TallArranger {
 public:
  TallArranger(std::vector<Node> nodes, const Rect& box, RearrangeStats* stats)
      : nodes_(std::move(nodes)), box_(box), stats_(stats) {
    for (Node& n : nodes_) {
      if (n.fixed) continue;
      n.item.rect.y = n.top ? box_.top() - n.item.rect.h : box_.y;
    }
    max_steps_ = nodes_.size() + 1;
  }

  void Run() { Arrange(box_.x, box_.right()); }
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::vector<Node*> InRange(Coord x0, Coord x1) {
    std::vector<Node*> out;
    for (Node& n : nodes_) {
      if (n.item.rect.x < x1 && x0 < n.item.rect.right()) out.push_back(&n);
    }
    return out;
  }

  Node* Find(const std::vector<Node*>& items, bool top,
             const std::function<bool(const Rect&)>& pred) {
    Node* best = nullptr;
    for (Node* n : items) {
      if (n->top != top || !pred(n->item.rect)) continue;
      if (!best || n->item.rect.x < best->item.rect.x) best = n;
    }
    return best;
  }

  // Sorts the movable items of one kind lying within [a, b); non-increasing
  // runs start at a, non-decreasing ones end at b.
  void SortSegment(const std::vector<Node*>& items, bool top, Coord a, Coord b,
                   bool non_increasing) {
    std::vector<Node*> seg;
    for (Node* n : items) {
      if (n->top == top && !n->fixed && n->item.rect.x >= a && n->item.rect.right() <= b) {
        seg.push_back(n);
      }
    }
    std::sort(seg.begin(), seg.end(), [&](const Node* p, const Node* q) {
      if (p->item.rect.h != q->item.rect.h) {
        return non_increasing ? p->item.rect.h > q->item.rect.h
                              : p->item.rect.h < q->item.rect.h;
      }
      return p->item.id < q->item.id;
    });
    Coord width = 0;
    for (Node* n : seg) width += n->item.rect.w;
    Coord x = non_increasing ? a : b - width;
    for (Node* n : seg) {
      n->item.rect.x = x;
      x += n->item.rect.w;
    }
  }

  bool Overlapping(const std::vector<Node*>& items) const {
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        if (InteriorsOverlap(items[i]->item.rect, items[j]->item.rect)) return true;
      }
    }
    return false;
  }

  // Keeps a sorted step only if it is overlap-free; otherwise restores the
  // flushed layout of that step.
  void Commit(const std::vector<Node*>& items, const std::vector<Rect>& before) {
    if (!Overlapping(items)) return;
    for (std::size_t i = 0; i < items.size(); ++i) items[i]->item.rect = before[i];
    if (stats_) ++stats_->fallbacks;
  }

  void Mirror(const std::vector<Node*>& items, Coord x0, Coord x1) {
    for (Node* n : items) n->item.rect.x = x0 + x1 - n->item.rect.right();
  }

  void Arrange(Coord X0, Coord X1) {
    if (X0 >= X1) return;
    if (++steps_ > max_steps_) {
      throw Error(ErrorCode::kInvariantBroken, "tall rearrangement did not terminate");
    }
    if (stats_) ++stats_->steps;
    std::vector<Node*> items = InRange(X0, X1);
    std::vector<Rect> before;
    for (Node* n : items) before.push_back(n->item.rect);

    Node* bl = Find(items, false, [&](const Rect& r) { return Crosses(r, X0); });
    Node* br = Find(items, false, [&](const Rect& r) { return Crosses(r, X1); });
    if (!bl && !br) {
      SortSegment(items, true, X0, X1, true);
      SortSegment(items, false, X0, X1, false);
      Commit(items, before);
      return;
    }
    const Coord dl = bl ? bl->item.rect.top() - box_.y : -1;
    const Coord dr = br ? br->item.rect.top() - box_.y : -1;
    if (dr > dl) {
      --steps_;
      if (stats_) --stats_->steps;
      Mirror(items, X0, X1);
      Arrange(X0, X1);
      Mirror(InRange(X0, X1), X0, X1);
      return;
    }
    const Coord hline = bl->item.rect.top();
    Node* tt = Find(items, true, [&](const Rect& r) { return r.y < hline && hline < r.top(); });
    const Coord right_end = tt ? tt->item.rect.right() : X1;
    Node* b1 = nullptr;
    Node* b2 = nullptr;
    if (tt) {
      b1 = Find(items, false, [&](const Rect& r) { return Crosses(r, tt->item.rect.x); });
      b2 = Find(items, false, [&](const Rect& r) { return Crosses(r, right_end); });
    }
    const Coord limit = tt ? (b1 ? b1->item.rect.x : tt->item.rect.x)
                           : (br ? br->item.rect.x : X1);
    Node* b0 = bl;
    for (Node* n : items) {
      const Rect& r = n->item.rect;
      if (n->top || n == bl || r.x < bl->item.rect.right() || r.right() > limit) continue;
      if (r.top() > b0->item.rect.top() ||
          (r.top() == b0->item.rect.top() && r.x < b0->item.rect.x)) {
        b0 = n;
      }
    }
    const Coord vbl = b0->item.rect.x;
    const Coord vbr = b0->item.rect.right();
    Node* t1 = Find(items, true, [&](const Rect& r) { return Crosses(r, vbl); });
    Node* t2 = Find(items, true, [&](const Rect& r) { return Crosses(r, vbr); });
    const Coord a0 = std::max(X0, vbl);

    if (b0 != bl) SortSegment(items, false, bl->item.rect.right(), vbl, false);
    SortSegment(items, false, vbr, limit, true);
    if (tt) {
      const Coord from = b1 ? b1->item.rect.right() : tt->item.rect.x;
      const Coord to = b2 ? b2->item.rect.x : right_end;
      SortSegment(items, false, from, to, true);
    }
    SortSegment(items, true, X0, t1 ? t1->item.rect.x : a0, true);
    SortSegment(items, true, t1 ? t1->item.rect.right() : a0, t2 ? t2->item.rect.x : vbr, true);
    SortSegment(items, true, t2 ? t2->item.rect.right() : vbr,
                tt ? tt->item.rect.x : X1, false);
    // Items beyond right_end are untouched by this step; restoring them is a no-op.
    Commit(items, before);
    if (tt) {
      if (b2) b2->fixed = true;
      Arrange(right_end, X1);
    }
  }

  std::vector<Node> nodes_;
  Rect box_;
  RearrangeStats* stats_;
  std::size_t steps_ = 0;
  std::size_t max_steps_ = 0;
};

void CheckNoOverlap(const std::vector<PlacedItem>& items, const char* where) {
  const auto overlaps = FindOverlaps(items);
  if (!overlaps.empty()) {
    throw Error(ErrorCode::kInvariantBroken,
                std::string(where) + ": items " + std::to_string(overlaps[0].first) + " and " +
                    std::to_string(overlaps[0].second) + " overlap");
  }
}

}  // namespace

GroupedBoxes RearrangeTall(const VerticalBoxScene& scene, RearrangeStats* stats) {
  std::vector<Node> nodes;
  std::size_t crossing = 0;
  for (const PlacedItem& t : scene.top) {
    if (scene.IsCrossing(t.id)) {
      throw Error(ErrorCode::kInvariantBroken,
                  "crossing top item " + std::to_string(t.id) + " must be split off first");
    }
    nodes.push_back({t, true, false});
  }
  for (const PlacedItem& b : scene.bottom) {
    const bool fixed = scene.IsCrossing(b.id);
    crossing += fixed ? 1 : 0;
    nodes.push_back({b, false, fixed});
  }
  if (crossing > 2) {
    throw Error(ErrorCode::kInvariantBroken, "more than two crossing bottom items");
  }
  TallArranger arranger(std::move(nodes), scene.box.rect, stats);
  arranger.Run();

  std::vector<PlacedItem> movable;
  std::vector<PlacedItem> all;
  GroupedBoxes out;
  for (const Node& n : arranger.nodes()) {
    all.push_back(n.item);
    if (n.fixed) {
      out.groups.push_back({{n.item.rect, BoxTag::kVertical}, n.item.rect.h, {n.item}});
    } else {
      if (!scene.box.rect.Contains(n.item.rect)) {
        throw Error(ErrorCode::kInvariantBroken,
                    "item " + std::to_string(n.item.id) + " left its box");
      }
      movable.push_back(n.item);
    }
  }
  CheckNoOverlap(all, "tall rearrangement");
  GroupedBoxes grouped = GroupAdjacent(std::move(movable));
  out.groups.insert(out.groups.end(), grouped.groups.begin(), grouped.groups.end());
  return out;
}

UnitRearrangement RearrangeUnit(const VerticalBoxScene& scene, const Rational& epsilon) {
  if (!(epsilon > 0 && epsilon <= Rational(1, 3))) {
    throw Error(ErrorCode::kInvalidInput, "epsilon must lie in (0, 1/3]");
  }
  const Rational s = 1 + 2 * epsilon;
  const Rect& B = scene.box.rect;
  UnitRearrangement out;
  out.b_prime = {B.x, B.y, B.w, FloorOf(s * B.h)};
  out.b_second = {0, 0, FloorOf((1 - epsilon) * B.w), FloorOf(Rational(B.h, 3))};
  auto stretch = [&](Coord y) { return B.y + FloorOf(s * (y - B.y)); };

  const CrossingSplit split = SplitForCrossing(scene);
  std::vector<PlacedItem> loose_slices;  // grouped at the end
  for (const PlacedItem& f : split.fixed) {
    PlacedItem moved{f.id, {f.rect.x, stretch(f.rect.y), f.rect.w, f.rect.h}};
    if (f.rect.w == 1 && !std::any_of(scene.top.begin(), scene.top.end(),
                                      [&](const PlacedItem& t) { return t.id == f.id; })) {
      loose_slices.push_back(moved);
    } else {
      out.prime.groups.push_back({{moved.rect, BoxTag::kVertical}, moved.rect.h, {moved}});
    }
  }

  std::vector<std::vector<PlacedItem>> between;  // per column, slices between two tall items
  ItemId next_pseudo = -1;
  std::set<ItemId> emitted;  // a bottom item straddling a cut is crossing in two sub-scenes
  for (const VerticalBoxScene& sub : split.scenes) {
    const Rect& R = sub.box.rect;
    const Coord lift = (stretch(R.top()) - R.y) - R.h;
    std::map<ItemId, std::vector<PlacedItem>> pseudo_slices;
    VerticalBoxScene glued = sub;
    glued.unit_verticals.clear();
    for (Coord x = R.x; x < R.right(); ++x) {
      std::vector<PlacedItem> col;
      for (const PlacedItem& v : sub.unit_verticals) {
        if (v.rect.x == x) col.push_back(v);
      }
      if (col.empty()) continue;
      const PlacedItem* fixed_tall = nullptr;
      int talls = 0;
      bool only_is_top = false;
      for (const PlacedItem& t : sub.TallItems()) {
        if (t.rect.x > x || t.rect.right() <= x) continue;
        ++talls;
        if (sub.IsCrossing(t.id)) fixed_tall = &t;
        only_is_top = std::any_of(sub.top.begin(), sub.top.end(),
                                  [&](const PlacedItem& p) { return p.id == t.id; });
      }
      std::vector<PlacedItem> rest;
      for (const PlacedItem& v : col) {
        if (fixed_tall && v.rect.top() <= fixed_tall->rect.y) {
          loose_slices.push_back({v.id, {v.rect.x, stretch(v.rect.y), 1, v.rect.h}});
        } else {
          rest.push_back(v);
        }
      }
      if (rest.empty()) continue;
      if (talls == 2) {
        between.push_back(rest);
        continue;
      }
      Coord total = 0;
      for (const PlacedItem& v : rest) total += v.rect.h;
      const bool as_top = talls == 1 && !only_is_top;
      const ItemId id = next_pseudo--;
      const PlacedItem pseudo{id, {x, as_top ? R.top() - total : R.y, 1, total}};
      (as_top ? glued.top : glued.bottom).push_back(pseudo);
      pseudo_slices[id] = rest;
    }
    const GroupedBoxes arranged = RearrangeTall(glued, &out.stats);
    std::vector<PlacedItem> real;
    std::vector<PlacedItem> pseudo;
    for (PlacedItem m : arranged.Items()) {
      if (sub.IsCrossing(m.id)) {
        if (!emitted.insert(m.id).second) continue;
        m.rect.y = stretch(m.rect.y);
        out.prime.groups.push_back({{m.rect, BoxTag::kVertical}, m.rect.h, {m}});
        continue;
      }
      if (m.rect.y != R.y) m.rect.y += lift;
      (m.id < 0 ? pseudo : real).push_back(m);
    }
    GroupedBoxes real_groups = GroupAdjacent(std::move(real));
    out.prime.groups.insert(out.prime.groups.end(), real_groups.groups.begin(),
                            real_groups.groups.end());
    for (const ItemGroup& g : GroupAdjacent(std::move(pseudo)).groups) {
      std::vector<std::vector<PlacedItem>> strips;
      for (const PlacedItem& m : g.members) strips.push_back(pseudo_slices.at(m.id));
      GroupedBoxes stacked = StackUnitVerticals(strips, g.box.rect);
      out.prime.groups.insert(out.prime.groups.end(), stacked.groups.begin(),
                              stacked.groups.end());
    }
  }

  std::stable_sort(between.begin(), between.end(), [](const auto& a, const auto& b) {
    Coord ha = 0;
    Coord hb = 0;
    for (const PlacedItem& v : a) ha += v.rect.h;
    for (const PlacedItem& v : b) hb += v.rect.h;
    if (ha != hb) return ha < hb;
    return a.front().rect.x < b.front().rect.x;
  });
  const std::size_t short_count =
      std::min<std::size_t>(between.size(), CeilOf(epsilon * B.w));

  if (short_count > 0) {
    std::vector<PlacedItem> occupied = out.prime.Items();
    occupied.insert(occupied.end(), loose_slices.begin(), loose_slices.end());
    Rational free_area = Rational(out.b_prime.w) * out.b_prime.h;
    for (const PlacedItem& it : occupied) {
      const Coord x0 = std::max(it.rect.x, B.x);
      const Coord x1 = std::min(it.rect.right(), B.right());
      if (x0 < x1) free_area -= Rational(x1 - x0) * it.rect.h;
    }
    Coord h0 = 0;
    for (std::size_t k = 0; k < short_count; ++k) {
      Coord h = 0;
      for (const PlacedItem& v : between[k]) h += v.rect.h;
      h0 = std::max(h0, h);
    }
    if (free_area < (1 + epsilon) * B.w * h0) {
      throw Error(ErrorCode::kGapDeficit, "free area " + FormatRational(free_area) +
                                              " below (1 + eps) w h0 = " +
                                              FormatRational((1 + epsilon) * B.w * h0));
    }
    // Largest free gap per unit column, refreshed after each insertion.
    auto best_gap = [&](Coord x) {
      std::vector<std::pair<Coord, Coord>> used;
      for (const PlacedItem& it : occupied) {
        if (it.rect.x <= x && x < it.rect.right()) used.emplace_back(it.rect.y, it.rect.top());
      }
      std::sort(used.begin(), used.end());
      std::pair<Coord, Coord> best{B.y, B.y};
      Coord cursor = B.y;
      for (auto [y0, y1] : used) {
        if (y0 - cursor > best.second - best.first) best = {cursor, y0};
        cursor = std::max(cursor, y1);
      }
      if (out.b_prime.top() - cursor > best.second - best.first) {
        best = {cursor, out.b_prime.top()};
      }
      return best;
    };
    std::vector<std::size_t> order(short_count);
    for (std::size_t k = 0; k < short_count; ++k) order[k] = short_count - 1 - k;
    for (std::size_t k : order) {
      Coord h = 0;
      for (const PlacedItem& v : between[k]) h += v.rect.h;
      Coord chosen = -1;
      Coord chosen_y = 0;
      Coord chosen_len = -1;
      for (Coord x = B.x; x < B.right(); ++x) {
        const auto [y0, y1] = best_gap(x);
        if (y1 - y0 > chosen_len) {
          chosen = x;
          chosen_y = y0;
          chosen_len = y1 - y0;
        }
      }
      if (chosen_len < h) {
        throw Error(ErrorCode::kGapDeficit, "no column gap of height " + std::to_string(h));
      }
      Coord y = chosen_y;
      for (const PlacedItem& v : between[k]) {
        const PlacedItem placed{v.id, {chosen, y, 1, v.rect.h}};
        loose_slices.push_back(placed);
        occupied.push_back(placed);
        y += v.rect.h;
      }
    }
  }
  GroupedBoxes loose = GroupAdjacent(std::move(loose_slices));
  out.prime.groups.insert(out.prime.groups.end(), loose.groups.begin(), loose.groups.end());

  std::vector<std::vector<PlacedItem>> rest(between.begin() + short_count, between.end());
  out.second = StackUnitVerticals(rest, out.b_second);
  CheckNoOverlap(out.prime.Items(), "unit rearrangement");
  return out;
}

}  // namespace stripack
