// Exact strip packing by branch and bound.
//
// Dominance: take any packing and repeatedly push items left, then down, as
// far as they go. Each move keeps the packing feasible and never raises its
// height, and the process terminates because coordinates only decrease. In the
// resulting packing every item touches the strip edge or another item on its
// left, so its x is a sum of widths of items to its left; likewise y is a sum
// of heights of items below it. Hence some optimal packing has x_i in the set
// of subset sums of the other widths (capped at W - w_i) and y_i in the set of
// subset sums of the other heights (capped at H - h_i). Searching those
// "normal patterns" is complete.
//
// Mirroring a packing and re-normalising only decreases coordinates, so the
// first item may be restricted to the lower-left quarter of the strip.

#include <algorithm>
#include <chrono>
#include <numeric>

#include "stripack/solvers.hpp"

namespace stripack {
namespace {

std::vector<Coord> SubsetSums(const std::vector<Coord>& values, Coord cap) {
  if (cap < 0) return {};
  std::vector<char> reachable(static_cast<std::size_t>(cap) + 1, 0);
  reachable[0] = 1;
  for (Coord v : values) {
    for (Coord s = cap; s >= v; --s) {
      if (reachable[s - v]) reachable[s] = 1;
    }
  }
  std::vector<Coord> sums;
  for (Coord s = 0; s <= cap; ++s) {
    if (reachable[s]) sums.push_back(s);
  }
  return sums;
}

class Search {
 public:
  Search(const Instance& instance, const SolverConfig& config, Packing incumbent)
      : instance_(instance),
        config_(config),
        incumbent_(std::move(incumbent)),
        start_(std::chrono::steady_clock::now()) {
    items_ = instance.items;
    std::stable_sort(items_.begin(), items_.end(), [](const Item& a, const Item& b) {
      if (a.w * a.h != b.w * b.h) return a.w * a.h > b.w * b.h;
      if (a.h != b.h) return a.h > b.h;
      return a.id < b.id;
    });
  }

  // Fills `out` with a packing of height <= H if one exists.
  bool Feasible(Coord H, std::vector<PlacedItem>& out) {
    const std::size_t n = items_.size();
    xs_.assign(n, {});
    ys_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Coord> widths;
      std::vector<Coord> heights;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        widths.push_back(items_[j].w);
        heights.push_back(items_[j].h);
      }
      xs_[i] = SubsetSums(widths, instance_.W - items_[i].w);
      ys_[i] = SubsetSums(heights, H - items_[i].h);
      if (ys_[i].empty() || xs_[i].empty()) return false;
    }
    height_ = H;
    placed_.clear();
    if (Place(0)) {
      out = placed_;
      return true;
    }
    return false;
  }

 private:
  void Tick() {
    ++nodes_;
    if (nodes_ > config_.node_limit) {
      throw LimitExceededError("node limit reached", incumbent_);
    }
    if ((nodes_ & 0xfff) == 0) {
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start_);
      if (elapsed.count() > config_.time_limit_ms) {
        throw LimitExceededError("time limit reached", incumbent_);
      }
    }
  }

  bool Place(std::size_t k) {
    if (k == items_.size()) return true;
    const Item& item = items_[k];
    // Identical consecutive items are placed in (y, x) order.
    const bool twin = k > 0 && items_[k - 1].w == item.w && items_[k - 1].h == item.h;
    for (Coord y : ys_[k]) {
      if (k == 0 && 2 * y > height_ - item.h) break;
      for (Coord x : xs_[k]) {
        if (k == 0 && 2 * x > instance_.W - item.w) break;
        if (twin) {
          const Rect& prev = placed_.back().rect;
          if (y < prev.y || (y == prev.y && x < prev.x)) continue;
        }
        Tick();
        const Rect r{x, y, item.w, item.h};
        const bool clash = std::any_of(placed_.begin(), placed_.end(), [&](const PlacedItem& p) {
          return InteriorsOverlap(p.rect, r);
        });
        if (clash) continue;
        placed_.push_back({item.id, r});
        if (Place(k + 1)) return true;
        placed_.pop_back();
      }
    }
    return false;
  }

  const Instance& instance_;
  const SolverConfig& config_;
  Packing incumbent_;
  std::chrono::steady_clock::time_point start_;
  std::vector<Item> items_;
  std::vector<std::vector<Coord>> xs_;
  std::vector<std::vector<Coord>> ys_;
  std::vector<PlacedItem> placed_;
  Coord height_ = 0;
  std::int64_t nodes_ = 0;
};

// Restores instance order so that output is independent of the search order.
Packing InInstanceOrder(const Instance& instance, const std::vector<PlacedItem>& placed) {
  const auto index = IndexById(instance);
  std::vector<PlacedItem> ordered(placed.size());
  for (const PlacedItem& p : placed) ordered[index.at(p.id)] = p;
  return ToPacking(ordered);
}

}  // namespace

Packing SolveExact(const Instance& instance, const SolverConfig& config) {
  CheckInstance(instance);
  if (instance.items.size() > config.max_items) {
    throw Error(ErrorCode::kInvalidInput,
                "exact solver accepts at most " + std::to_string(config.max_items) +
                    " items, got " + std::to_string(instance.items.size()));
  }
  Packing best = SolveNfdh(instance);
  for (Packing candidate : {SolveFfdh(instance), SolveBottomLeft(instance)}) {
    if (candidate.height < best.height) best = std::move(candidate);
  }
  const Coord lower = AreaLowerBound(instance);
  Search search(instance, config, best);
  for (Coord H = lower; H < best.height; ++H) {
    std::vector<PlacedItem> placed;
    if (search.Feasible(H, placed)) return InInstanceOrder(instance, placed);
  }
  return best;
}

}  // namespace stripack
