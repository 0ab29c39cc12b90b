#include <algorithm>
#include <numeric>
#include <set>

#include "stripack/error.hpp"
#include "stripack/structure.hpp"

namespace stripack {

namespace {

struct Piece {
  Coord row;
  Coord x0;
  Coord x1;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t Find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void Join(std::size_t a, std::size_t b) { parent_[Find(a)] = Find(b); }

 private:
  std::vector<std::size_t> parent_;
};

bool Touches(const Rect& r, Coord a, Coord b) { return r.x < b && a < r.right(); }

// Splits one vertical box region into slab boxes: every x-edge of a piece in
// the component becomes a slab boundary, and maximal row runs become boxes.
void EmitComponent(const std::vector<Piece>& pieces, Coord grid, std::vector<Box>& out) {
  std::vector<Coord> edges;
  for (const Piece& p : pieces) {
    edges.push_back(p.x0);
    edges.push_back(p.x1);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<std::vector<Coord>> rows(edges.size());
  for (const Piece& p : pieces) {
    auto lo = std::lower_bound(edges.begin(), edges.end(), p.x0) - edges.begin();
    auto hi = std::lower_bound(edges.begin(), edges.end(), p.x1) - edges.begin();
    for (auto s = lo; s < hi; ++s) rows[s].push_back(p.row);
  }
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    std::vector<Coord>& rs = rows[s];
    std::sort(rs.begin(), rs.end());
    for (std::size_t i = 0; i < rs.size();) {
      std::size_t j = i;
      while (j + 1 < rs.size() && rs[j + 1] == rs[j] + 1) ++j;
      out.push_back({{edges[s], rs[i] * grid, edges[s + 1] - edges[s],
                      (rs[j] - rs[i] + 1) * grid},
                     BoxTag::kVertical});
      i = j + 1;
    }
  }
}

}  // namespace

Level1Result BuildLevel1Partition(const Instance& rounded,
                                  const ItemClassification& classification,
                                  const PartitionParams& p, const Packing& reference) {
  CheckPartitionParams(p);
  const ValidationReport report = ValidatePacking(rounded, reference);
  if (!report.ok()) {
    throw Error(ErrorCode::kInvalidInput, "reference packing is invalid: " + report.ToString());
  }
  Level1Result result;
  const Coord g = GridStep(p);
  const Coord cw = CellWidth(p, rounded.W);
  result.grid = g;
  result.cell_width = cw;

  const std::vector<PlacedItem> placed = Resolve(rounded, reference);
  std::vector<PlacedItem> large, tv, hz;
  for (const PlacedItem& it : placed) {
    const ItemClass c = classification.Of(it.id);
    if (classification.IsGridAligned(it.id) && (it.rect.y % g != 0 || it.rect.h % g != 0)) {
      throw Error(ErrorCode::kGridViolation,
                  "item " + std::to_string(it.id) + " is off the y-grid of step " +
                      std::to_string(g));
    }
    if (c == ItemClass::kLarge) large.push_back(it);
    if (c == ItemClass::kTall || c == ItemClass::kVertical) tv.push_back(it);
    if (c == ItemClass::kHorizontal) hz.push_back(it);
  }

  const Coord top = std::max(p.opt, report.height);
  const Coord A = (top + g - 1) / g * g;
  BoxPartition& part = result.partition;
  part.width = rounded.W;
  part.height = A;
  for (const PlacedItem& it : large) {
    part.assignment[it.id] = part.boxes.size();
    part.boxes.push_back({it.rect, BoxTag::kLarge});
  }

  std::vector<Piece> vertical;
  for (Coord r = 0; r * g < A; ++r) {
    const Coord y0 = r * g;
    const Coord y1 = y0 + g;
    auto in_row = [&](const Rect& rc) { return rc.y < y1 && y0 < rc.top(); };
    std::vector<Rect> blocked;
    for (const PlacedItem& it : large) {
      if (in_row(it.rect)) blocked.push_back(it.rect);
    }
    std::sort(blocked.begin(), blocked.end(),
              [](const Rect& a, const Rect& b) { return a.x < b.x; });
    std::vector<Rect> row_tv, row_hz;
    for (const PlacedItem& it : tv) {
      if (in_row(it.rect)) row_tv.push_back(it.rect);
    }
    for (const PlacedItem& it : hz) {
      if (in_row(it.rect)) row_hz.push_back(it.rect);
    }
    auto has_hz = [&](Coord a, Coord b) {
      return std::any_of(row_hz.begin(), row_hz.end(),
                         [&](const Rect& rc) { return Touches(rc, a, b); });
    };

    std::vector<std::pair<Coord, Coord>> free;
    Coord pos = 0;
    for (const Rect& rc : blocked) {
      if (pos < rc.x) free.emplace_back(pos, rc.x);
      pos = std::max(pos, rc.right());
    }
    if (pos < rounded.W) free.emplace_back(pos, rounded.W);

    for (auto [f0, f1] : free) {
      std::set<Coord> cells;
      for (const Rect& rc : row_tv) {
        if (!Touches(rc, f0, f1)) continue;
        for (Coord c = rc.x / cw; c <= (rc.right() - 1) / cw; ++c) cells.insert(c);
      }
      // Horizontal runs are flushed whenever a vertical piece interrupts them.
      Coord run_start = f0;
      auto flush = [&](Coord end) {
        if (run_start < end) part.boxes.push_back({{run_start, y0, end - run_start, g},
                                                   BoxTag::kHorizontal});
      };
      auto add_vertical = [&](Coord a, Coord b) {
        flush(a);
        if (!vertical.empty() && vertical.back().row == r && vertical.back().x1 == a &&
            a % cw != 0) {
          vertical.back().x1 = b;  // same cell: extend
        } else {
          vertical.push_back({r, a, b});
        }
        run_start = b;
      };
      for (Coord c : cells) {
        const Coord cx0 = std::max(c * cw, f0);
        const Coord cx1 = std::min((c + 1) * cw, f1);
        if (cx0 >= cx1) continue;
        if (!has_hz(cx0, cx1)) {
          add_vertical(cx0, cx1);
          continue;
        }
        Coord vmin = cx1;
        Coord vmax = cx0;
        for (const Rect& rc : row_tv) {
          if (!Touches(rc, cx0, cx1)) continue;
          vmin = std::min(vmin, std::max(rc.x, cx0));
          vmax = std::max(vmax, std::min(rc.right(), cx1));
        }
        if (cx0 < vmin && !has_hz(cx0, vmin)) {
          add_vertical(cx0, vmin);
        }
        add_vertical(vmin, vmax);
        if (vmax < cx1) {
          if (has_hz(vmax, cx1)) {
            run_start = vmax;
          } else {
            add_vertical(vmax, cx1);
          }
        }
      }
      flush(f1);
    }
  }

  // Vertical pieces in consecutive rows with overlapping x-ranges form one
  // rectilinear region; each region is cut into slabs.
  UnionFind uf(vertical.size());
  std::size_t row_begin = 0;
  while (row_begin < vertical.size()) {
    std::size_t row_end = row_begin;
    while (row_end < vertical.size() && vertical[row_end].row == vertical[row_begin].row) {
      ++row_end;
    }
    std::size_t next_end = row_end;
    while (next_end < vertical.size() && vertical[next_end].row == vertical[row_begin].row + 1) {
      ++next_end;
    }
    std::size_t j = row_end;
    for (std::size_t i = row_begin; i < row_end && j < next_end;) {
      if (vertical[i].x0 < vertical[j].x1 && vertical[j].x0 < vertical[i].x1) {
        uf.Join(i, j);
      }
      if (vertical[i].x1 < vertical[j].x1) {
        ++i;
      } else {
        ++j;
      }
    }
    row_begin = row_end;
  }
  std::map<std::size_t, std::vector<Piece>> components;
  for (std::size_t i = 0; i < vertical.size(); ++i) {
    components[uf.Find(i)].push_back(vertical[i]);
  }
  for (const auto& [root, pieces] : components) EmitComponent(pieces, g, part.boxes);

  for (const PlacedItem& it : placed) {
    const ItemClass c = classification.Of(it.id);
    if (c != ItemClass::kTall && c != ItemClass::kVertical && c != ItemClass::kHorizontal) {
      continue;
    }
    std::size_t touching = 0;
    bool contained = false;
    for (const Box& b : part.boxes) {
      if (!InteriorsOverlap(b.rect, it.rect)) continue;
      ++touching;
      contained = b.rect.Contains(it.rect);
    }
    if (touching == 1 && contained) continue;
    if (c == ItemClass::kTall) result.crossing.tall.push_back(it.id);
    if (c == ItemClass::kVertical) result.crossing.vertical.push_back(it.id);
    if (c == ItemClass::kHorizontal) result.crossing.horizontal.push_back(it.id);
  }
  for (auto* v : {&result.crossing.tall, &result.crossing.vertical, &result.crossing.horizontal}) {
    std::sort(v->begin(), v->end());
  }
  return result;
}

std::vector<ItemId> CrossingRuleViolations(const BoxPartition& partition,
                                           const Instance& instance,
                                           const ItemClassification& classification,
                                           const Packing& packing) {
  std::vector<ItemId> bad;
  for (const PlacedItem& it : Resolve(instance, packing)) {
    const ItemClass c = classification.Of(it.id);
    bool ok = true;
    for (const Box& b : partition.boxes) {
      if (!InteriorsOverlap(b.rect, it.rect)) continue;
      switch (c) {
        case ItemClass::kLarge:
          ok = ok && b.tag == BoxTag::kLarge;
          break;
        case ItemClass::kTall:
        case ItemClass::kVertical:
          ok = ok && b.tag == BoxTag::kVertical && b.rect.y <= it.rect.y &&
               b.rect.top() >= it.rect.top();
          break;
        case ItemClass::kHorizontal:
          ok = ok && b.tag == BoxTag::kHorizontal && b.rect.x <= it.rect.x &&
               b.rect.right() >= it.rect.right();
          break;
        default:
          break;
      }
    }
    if (!ok) bad.push_back(it.id);
  }
  return bad;
}

}  // namespace stripack
