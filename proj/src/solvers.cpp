#include "stripack/solvers.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

namespace stripack {

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kExact: return "exact";
    case Algorithm::kNfdh: return "nfdh";
    case Algorithm::kFfdh: return "ffdh";
    case Algorithm::kBottomLeft: return "bl";
  }
  return "exact";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  if (name == "exact") return Algorithm::kExact;
  if (name == "nfdh") return Algorithm::kNfdh;
  if (name == "ffdh") return Algorithm::kFfdh;
  if (name == "bl" || name == "bottom_left") return Algorithm::kBottomLeft;
  return std::nullopt;
}

SolverConfig WithEnvironmentOverrides(SolverConfig config) {
  if (const char* env = std::getenv("STRIPACK_NODE_LIMIT")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0) {
      throw Error(ErrorCode::kInvalidInput, "STRIPACK_NODE_LIMIT must be a positive integer");
    }
    config.node_limit = v;
  }
  return config;
}

namespace {

// Sorted by non-increasing height, ties by id.
std::vector<Item> ByDecreasingHeight(const Instance& instance) {
  std::vector<Item> items = instance.items;
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.h != b.h) return a.h > b.h;
    return a.id < b.id;
  });
  return items;
}

}  // namespace

Packing SolveNfdh(const Instance& instance) {
  CheckInstance(instance);
  Packing packing;
  Coord shelf_y = 0;
  Coord shelf_h = 0;
  Coord x = 0;
  for (const Item& item : ByDecreasingHeight(instance)) {
    if (x + item.w > instance.W) {
      shelf_y += shelf_h;
      shelf_h = 0;
      x = 0;
    }
    if (shelf_h == 0) shelf_h = item.h;
    packing.placements.push_back({item.id, x, shelf_y});
    x += item.w;
  }
  packing.height = instance.items.empty() ? 0 : shelf_y + shelf_h;
  return packing;
}

Packing SolveFfdh(const Instance& instance) {
  CheckInstance(instance);
  struct Shelf {
    Coord y;
    Coord h;
    Coord used;
  };
  std::vector<Shelf> shelves;
  Packing packing;
  Coord top = 0;
  for (const Item& item : ByDecreasingHeight(instance)) {
    auto it = std::find_if(shelves.begin(), shelves.end(), [&](const Shelf& s) {
      return s.used + item.w <= instance.W;
    });
    if (it == shelves.end()) {
      shelves.push_back({top, item.h, 0});
      top += item.h;
      it = std::prev(shelves.end());
    }
    packing.placements.push_back({item.id, it->used, it->y});
    it->used += item.w;
  }
  packing.height = top;
  return packing;
}

Packing SolveBottomLeft(const Instance& instance) {
  CheckInstance(instance);
  std::vector<PlacedItem> placed;
  for (const Item& item : instance.items) {
    std::vector<Coord> ys{0};
    std::vector<Coord> xs{0};
    for (const PlacedItem& p : placed) {
      ys.push_back(p.rect.top());
      xs.push_back(p.rect.right());
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    bool done = false;
    for (Coord y : ys) {
      for (Coord x : xs) {
        if (x + item.w > instance.W) break;
        const Rect r{x, y, item.w, item.h};
        const bool free = std::none_of(placed.begin(), placed.end(), [&](const PlacedItem& p) {
          return InteriorsOverlap(p.rect, r);
        });
        if (free) {
          placed.push_back({item.id, r});
          done = true;
          break;
        }
      }
      if (done) break;
    }
    // The topmost candidate y is always free, so done holds here.
  }
  return ToPacking(placed);
}

Packing Solve(const Instance& instance, const SolverConfig& config) {
  switch (config.algorithm) {
    case Algorithm::kExact: return SolveExact(instance, config);
    case Algorithm::kNfdh: return SolveNfdh(instance);
    case Algorithm::kFfdh: return SolveFfdh(instance);
    case Algorithm::kBottomLeft: return SolveBottomLeft(instance);
  }
  return SolveNfdh(instance);
}

std::optional<TripleCover> BruteForceThreePartition(const ThreePartitionInstance& tp) {
  CheckThreePartition(tp);
  if (tp.n > 6) {
    throw Error(ErrorCode::kInvalidInput, "exhaustive 3-Partition search limited to n <= 6");
  }
  const int m = static_cast<int>(tp.s.size());
  std::vector<bool> used(m, false);
  TripleCover cover;
  std::function<bool()> search = [&]() -> bool {
    int first = 0;
    while (first < m && used[first]) ++first;
    if (first == m) return true;
    used[first] = true;
    for (int j = first + 1; j < m; ++j) {
      if (used[j]) continue;
      used[j] = true;
      for (int k = j + 1; k < m; ++k) {
        if (used[k] || tp.s[first] + tp.s[j] + tp.s[k] != 0) continue;
        used[k] = true;
        cover.triples.push_back({first + 1, j + 1, k + 1});
        if (search()) return true;
        cover.triples.pop_back();
        used[k] = false;
      }
      used[j] = false;
    }
    used[first] = false;
    return false;
  };
  if (search()) return cover;
  return std::nullopt;
}

}  // namespace stripack
