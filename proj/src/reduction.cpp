#include "stripack/reduction.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "stripack/error.hpp"
#include "stripack/solvers.hpp"

namespace stripack {

void CheckThreePartition(const ThreePartitionInstance& tp) {
  if (tp.n < 1) throw Error(ErrorCode::kInvalidInput, "n must be at least 1");
  if (tp.s.size() != static_cast<std::size_t>(3) * tp.n) {
    throw Error(ErrorCode::kInvalidInput, "expected exactly 3n values");
  }
  std::int64_t sum = 0;
  for (std::int64_t v : tp.s) sum = CheckedAdd(sum, v);
  if (sum != 0) {
    throw Error(ErrorCode::kInvalidInput,
                "values sum to " + std::to_string(sum) + ", not 0");
  }
}

std::int64_t MagnitudeBound(const ThreePartitionInstance& tp) {
  std::int64_t m = 1;
  for (std::int64_t v : tp.s) {
    if (v == INT64_MIN) throw Error(ErrorCode::kOverflow, "value out of range");
    m = CheckedAdd(m, std::llabs(v));
  }
  return m;
}

std::pair<std::int64_t, std::int64_t> PickAB(std::int64_t n, std::int64_t M) {
  if (n < 1 || M < 1) {
    throw Error(ErrorCode::kInvalidInput, "n and M must be positive");
  }
  const std::int64_t b = CheckedAdd(std::max(CheckedMul(9, n), CheckedMul(3, M)), 3);
  const std::int64_t a = CheckedMul(b, b);
  return {a, b};
}

ReductionResult BuildInstance(const ThreePartitionInstance& tp) {
  CheckThreePartition(tp);
  ReductionParams params;
  params.n = tp.n;
  params.M = MagnitudeBound(tp);
  std::tie(params.a, params.b) = PickAB(params.n, params.M);
  const std::int64_t a = params.a;
  const std::int64_t b = params.b;
  const std::int64_t n = params.n;
  params.W = CheckedMul(CheckedMul(2, CheckedAdd(a, b)), n);
  // 11 W bounds every coordinate product we form later.
  CheckedMul(params.W, kGadgetHeight);

  Instance instance;
  instance.W = params.W;
  ItemId next = 1;
  auto add = [&](Coord w, Coord h) { instance.items.push_back({next++, w, h}); };
  for (std::int64_t v : tp.s) add(b / 3 + v, 1);
  for (std::int64_t i = 0; i < 2 * n; ++i) add(a, 2);
  for (std::int64_t i = 0; i < n; ++i) add(b, 3);
  for (std::int64_t i = 0; i < 2 * n; ++i) add(a + b, 4);
  for (std::int64_t i = 0; i < 2 * n - 1; ++i) add(a + b, 5);
  add(a, 5);
  add(b, 5);
  return {std::move(instance), params};
}

GadgetRole RoleOf(const Item& item) {
  switch (item.h) {
    case 1: return GadgetRole::kSolution;
    case 2: return GadgetRole::kMiddleA;
    case 3: return GadgetRole::kMiddleB;
    default: return GadgetRole::kSide;
  }
}

bool IsValidCover(const ThreePartitionInstance& tp, const TripleCover& cover) {
  if (cover.triples.size() != static_cast<std::size_t>(tp.n)) return false;
  std::vector<bool> used(tp.s.size(), false);
  for (const auto& t : cover.triples) {
    std::int64_t sum = 0;
    for (int idx : t) {
      if (idx < 1 || static_cast<std::size_t>(idx) > tp.s.size()) return false;
      if (used[idx - 1]) return false;
      used[idx - 1] = true;
      sum += tp.s[idx - 1];
    }
    if (sum != 0) return false;
  }
  return true;
}

namespace {

// Items of a reduction instance keyed by (w, h), each pool consumed in id order.
class ItemPools {
 public:
  explicit ItemPools(const Instance& instance) {
    for (const Item& item : instance.items) {
      pools_[{item.w, item.h}].push_back(item.id);
    }
    for (auto& [key, ids] : pools_) std::reverse(ids.begin(), ids.end());
  }

  ItemId Take(Coord w, Coord h) {
    auto it = pools_.find({w, h});
    if (it == pools_.end() || it->second.empty()) {
      throw Error(ErrorCode::kInvalidInput,
                  "instance lacks a " + std::to_string(w) + "x" + std::to_string(h) +
                      " rectangle required by the gadget");
    }
    ItemId id = it->second.back();
    it->second.pop_back();
    return id;
  }

 private:
  std::map<std::pair<Coord, Coord>, std::vector<ItemId>> pools_;
};

}  // namespace

Packing CanonicalPacking(const Instance& instance, const ReductionParams& params,
                         const TripleCover& cover) {
  const std::int64_t n = params.n;
  const Coord a = params.a;
  const Coord b = params.b;
  const Coord ab = a + b;
  if (cover.triples.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::kInvalidCover, "cover must have exactly n triples");
  }
  const auto index = IndexById(instance);
  std::set<int> seen;
  for (const auto& t : cover.triples) {
    Coord width = 0;
    for (int idx : t) {
      if (idx < 1 || idx > 3 * n || !seen.insert(idx).second) {
        throw Error(ErrorCode::kInvalidCover,
                    "index " + std::to_string(idx) + " is out of range or repeated");
      }
      auto it = index.find(idx);
      if (it == index.end() || instance.items[it->second].h != 1) {
        throw Error(ErrorCode::kInvalidCover,
                    "no solution rectangle with id " + std::to_string(idx));
      }
      width += instance.items[it->second].w;
    }
    if (width != b) {
      throw Error(ErrorCode::kInvalidCover,
                  "triple widths sum to " + std::to_string(width) + ", not b");
    }
  }

  ItemPools pools(instance);
  Packing packing;
  auto place = [&](ItemId id, Coord x, Coord y) { packing.placements.push_back({id, x, y}); };

  // Bottom row: (a+b)-wide side rectangles alternating 5, 4, 5, 4, ...
  for (std::int64_t k = 0; k < 2 * n; ++k) {
    const Coord h = (k % 2 == 0) ? 5 : 4;
    place(pools.Take(ab, h), k * ab, 0);
  }
  // Top row: b x 5, then 4, 5, 4, ..., 4 over (a+b)-wide rectangles, then a x 5.
  place(pools.Take(b, 5), 0, kGadgetHeight - 5);
  for (std::int64_t k = 0; k < 2 * n - 1; ++k) {
    const Coord h = (k % 2 == 0) ? 4 : 5;
    place(pools.Take(ab, h), b + k * ab, kGadgetHeight - h);
  }
  place(pools.Take(a, 5), params.W - a, kGadgetHeight - 5);
  // Middle row: per period of width 2(a+b), heights 1 (the triple), 2, 3, 2.
  for (std::int64_t p = 0; p < n; ++p) {
    const Coord x0 = 2 * p * ab;
    Coord x = x0;
    for (int idx : cover.triples[p]) {
      place(idx, x, 5);
      x += instance.items[index.at(idx)].w;
    }
    place(pools.Take(a, 2), x0 + b, 5);
    place(pools.Take(b, 3), x0 + ab, 4);
    place(pools.Take(a, 2), x0 + ab + b, 4);
  }
  packing.height = kGadgetHeight;
  return packing;
}

Packing MirrorPacking(const Instance& instance, const Packing& packing) {
  const auto index = IndexById(instance);
  Packing mirrored = packing;
  for (Placement& p : mirrored.placements) {
    const Item& item = instance.items[index.at(p.id)];
    p.x = instance.W - p.x - item.w;
  }
  return mirrored;
}

namespace {

// Returns the placed items with the b x 5 rectangle left of the a x 5 one.
std::vector<PlacedItem> NormalizedLayout(const Instance& instance,
                                         const ReductionParams& params,
                                         const Packing& packing, bool* mirrored) {
  std::vector<PlacedItem> placed = Resolve(instance, packing);
  std::optional<Coord> bx, ax;
  for (const PlacedItem& p : placed) {
    if (p.rect.h != 5) continue;
    if (p.rect.w == params.b) bx = p.rect.x;
    if (p.rect.w == params.a) ax = p.rect.x;
  }
  *mirrored = bx && ax && *bx > *ax;
  if (*mirrored) {
    for (PlacedItem& p : placed) p.rect.x = instance.W - p.rect.right();
  }
  return placed;
}

}  // namespace

TripleCover ExtractPartition(const Instance& instance, const ReductionParams& params,
                             const Packing& packing) {
  const ValidationReport report = ValidatePacking(instance, packing);
  if (!report.ok()) {
    throw Error(ErrorCode::kNotTightlyPacked,
                "input is not a valid packing: " + report.ToString());
  }
  if (report.height > kGadgetHeight) {
    throw Error(ErrorCode::kNotTightlyPacked,
                "packing height " + std::to_string(report.height) + " exceeds 11");
  }
  bool mirrored = false;
  const std::vector<PlacedItem> placed =
      NormalizedLayout(instance, params, packing, &mirrored);

  // Lines in general position: one per elementary x-interval between edges.
  std::vector<Coord> xs{0, instance.W};
  for (const PlacedItem& p : placed) {
    xs.push_back(p.rect.x);
    xs.push_back(p.rect.right());
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Coord lo = xs[i];
    const Coord hi = xs[i + 1];
    int side = 0;
    int middle = 0;
    for (const PlacedItem& p : placed) {
      if (p.rect.x <= lo && p.rect.right() >= hi) {
        (p.rect.h >= 4 ? side : middle)++;
      }
    }
    if (side != 2 || middle != 1) {
      throw Error(ErrorCode::kNotTightlyPacked,
                  "vertical line at x=" + std::to_string(lo) + ".5 meets " +
                      std::to_string(side) + " side and " + std::to_string(middle) +
                      " middle rectangles");
    }
  }

  std::vector<PlacedItem> middle;
  for (const PlacedItem& p : placed) {
    if (p.rect.h <= 3) middle.push_back(p);
  }
  std::sort(middle.begin(), middle.end(),
            [](const PlacedItem& l, const PlacedItem& r) { return l.rect.x < r.rect.x; });
  Coord cursor = 0;
  for (const PlacedItem& p : middle) {
    if (p.rect.x != cursor) {
      throw Error(ErrorCode::kNotTightlyPacked,
                  "middle rectangles leave a gap or overlap at x=" + std::to_string(cursor));
    }
    cursor = p.rect.right();
  }

  TripleCover cover;
  std::size_t i = 0;
  while (i < middle.size()) {
    if (middle[i].rect.h != 1) {
      ++i;
      continue;
    }
    std::size_t j = i;
    Coord width = 0;
    while (j < middle.size() && middle[j].rect.h == 1) width += middle[j++].rect.w;
    if (j - i != 3 || width != params.b) {
      throw Error(ErrorCode::kBadRun,
                  "run of " + std::to_string(j - i) + " solution rectangles at x=" +
                      std::to_string(middle[i].rect.x) + " has width " +
                      std::to_string(width));
    }
    std::array<int, 3> triple{};
    for (std::size_t k = 0; k < 3; ++k) {
      const ItemId id = middle[i + k].id;
      if (id < 1 || id > 3 * params.n) {
        throw Error(ErrorCode::kInvalidInput,
                    "solution rectangle id " + std::to_string(id) + " out of range");
      }
      triple[k] = static_cast<int>(id);
    }
    cover.triples.push_back(triple);
    i = j;
  }
  if (cover.triples.size() != static_cast<std::size_t>(params.n)) {
    throw Error(ErrorCode::kBadRun, "expected n runs of solution rectangles");
  }
  return cover;
}

std::optional<std::pair<std::int64_t, std::int64_t>> DecomposeSideBoundary(
    Coord x, const ReductionParams& params) {
  const std::int64_t ab = params.a + params.b;
  for (std::int64_t delta : {0, 1}) {
    const Coord rest = x - delta * params.b;
    if (rest < 0 || rest % ab != 0) continue;
    const std::int64_t n_a = rest / ab;
    const std::int64_t n_b = n_a + delta;
    if (n_a <= 2 * params.n && n_b <= 2 * params.n) {
      return std::make_pair(n_a, n_b);
    }
  }
  return std::nullopt;
}

XCoordinateReport CheckXCoordinates(const Instance& instance,
                                    const ReductionParams& params,
                                    const Packing& packing) {
  XCoordinateReport report;
  const std::vector<PlacedItem> placed =
      NormalizedLayout(instance, params, packing, &report.mirrored);
  std::set<Coord> ends;
  for (const PlacedItem& p : placed) {
    if (p.rect.h < 4) continue;
    ends.insert(p.rect.x);
    ends.insert(p.rect.right());
  }
  for (Coord x : ends) {
    if (auto d = DecomposeSideBoundary(x, params)) {
      report.boundaries.push_back({x, d->first, d->second});
    } else {
      report.violations.push_back(x);
    }
  }
  return report;
}

GeneratedThreePartition RandomYesInstance(int n, std::int64_t range,
                                          std::mt19937_64& rng) {
  if (n < 1 || range < 0) {
    throw Error(ErrorCode::kInvalidInput, "need n >= 1 and range >= 0");
  }
  std::uniform_int_distribution<std::int64_t> dist(-range, range);
  std::vector<std::int64_t> values;
  values.reserve(3 * n);
  for (int t = 0; t < n; ++t) {
    while (true) {
      const std::int64_t u = dist(rng);
      const std::int64_t v = dist(rng);
      const std::int64_t w = -(u + v);
      if (w < -range || w > range) continue;
      values.insert(values.end(), {u, v, w});
      break;
    }
  }
  std::vector<int> perm(values.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  // Original position perm[k] goes to slot k.
  GeneratedThreePartition out;
  out.tp.n = n;
  out.tp.s.resize(values.size());
  std::vector<int> slot_of(values.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    out.tp.s[k] = values[perm[k]];
    slot_of[perm[k]] = static_cast<int>(k) + 1;
  }
  TripleCover cover;
  for (int t = 0; t < n; ++t) {
    cover.triples.push_back({slot_of[3 * t], slot_of[3 * t + 1], slot_of[3 * t + 2]});
  }
  out.cover = std::move(cover);
  return out;
}

GeneratedThreePartition RandomNoInstance(int n, std::int64_t range,
                                         std::mt19937_64& rng) {
  if (n < 2 || n > 6) {
    throw Error(ErrorCode::kInvalidInput,
                "no-instances need 2 <= n <= 6 (every n = 1 instance is a yes-instance)");
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    GeneratedThreePartition g = RandomYesInstance(n, range, rng);
    // Move one unit between two different triples of the planted cover.
    std::uniform_int_distribution<int> pick_triple(0, n - 1);
    std::uniform_int_distribution<int> pick_member(0, 2);
    const int t1 = pick_triple(rng);
    int t2 = pick_triple(rng);
    while (t2 == t1) t2 = pick_triple(rng);
    const int i = g.cover->triples[t1][pick_member(rng)] - 1;
    const int j = g.cover->triples[t2][pick_member(rng)] - 1;
    g.tp.s[i] += 1;
    g.tp.s[j] -= 1;
    if (!BruteForceThreePartition(g.tp)) {
      g.cover.reset();
      return g;
    }
  }
  throw Error(ErrorCode::kInvalidInput, "could not generate a no-instance");
}

}  // namespace stripack
