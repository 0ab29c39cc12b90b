#pragma once

// 3-Partition -> strip packing gadget: instance construction, the canonical
// height-11 packing of a yes-instance, and recovery of a partition from any
// packing of height 11.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "stripack/geometry.hpp"

namespace stripack {

struct ThreePartitionInstance {
  int n = 0;
  std::vector<std::int64_t> s;  // 3n values summing to zero
};

/// Triples of 1-based indices into ThreePartitionInstance::s.
struct TripleCover {
  std::vector<std::array<int, 3>> triples;
};

struct ReductionParams {
  std::int64_t n = 0;
  std::int64_t M = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t W = 0;
  friend bool operator==(const ReductionParams&, const ReductionParams&) = default;
};

/// Height of the packing every yes-instance admits.
inline constexpr Coord kGadgetHeight = 11;

/// Throws Error(kInvalidInput) unless |s| = 3n, n >= 1 and sum(s) = 0.
void CheckThreePartition(const ThreePartitionInstance& tp);

/// M = 1 + sum |s_i|.
std::int64_t MagnitudeBound(const ThreePartitionInstance& tp);

/// b = max(9n, 3M) + 3 and a = b^2. Any (x, y, z) with
/// |x|,|y|,|z| <= max(9n, 3M) and ax + by + z = 0 is then the zero vector.
std::pair<std::int64_t, std::int64_t> PickAB(std::int64_t n, std::int64_t M);

struct ReductionResult {
  Instance instance;
  ReductionParams params;
};

/// Item ids: 1..3n are the solution rectangles (id i encodes s_i), followed by
/// the 2n a x 2, n b x 3, 2n (a+b) x 4, 2n-1 (a+b) x 5, a x 5 and b x 5 items.
ReductionResult BuildInstance(const ThreePartitionInstance& tp);

enum class GadgetRole {
  kSolution,  // height 1
  kMiddleA,   // a x 2
  kMiddleB,   // b x 3
  kSide,      // height 4 or 5
};

/// Role of an item of a reduction instance, decided by its height.
GadgetRole RoleOf(const Item& item);

bool IsValidCover(const ThreePartitionInstance& tp, const TripleCover& cover);

/// Lays the gadget out in W x 11 following the canonical three-row pattern.
/// Throws Error(kInvalidCover) if the cover is malformed or some triple of
/// solution rectangles does not have total width b.
Packing CanonicalPacking(const Instance& instance, const ReductionParams& params,
                         const TripleCover& cover);

/// Recovers a cover from a packing of height at most 11. Throws
/// Error(kNotTightlyPacked) if some vertical line in general position does not
/// meet exactly two side rectangles and one middle rectangle, and
/// Error(kBadRun) if a maximal run of solution rectangles is not three
/// rectangles of total width b. Triples are reported left to right.
TripleCover ExtractPartition(const Instance& instance, const ReductionParams& params,
                             const Packing& packing);

struct SideBoundary {
  Coord x = 0;
  std::int64_t n_a = 0;
  std::int64_t n_b = 0;
};

struct XCoordinateReport {
  std::vector<SideBoundary> boundaries;  // decomposable side-rectangle ends
  std::vector<Coord> violations;         // ends with no valid decomposition
  bool mirrored = false;
  bool ok() const { return violations.empty(); }
};

/// x = a n_a + b n_b with 0 <= n_a, n_b <= 2n and n_b - n_a in {0, 1}.
std::optional<std::pair<std::int64_t, std::int64_t>> DecomposeSideBoundary(
    Coord x, const ReductionParams& params);

/// Checks every x-coordinate where a side rectangle starts or ends, after
/// mirroring so that the b x 5 rectangle lies left of the a x 5 one.
XCoordinateReport CheckXCoordinates(const Instance& instance,
                                    const ReductionParams& params,
                                    const Packing& packing);

/// Mirror image x -> W - x - w of a packing.
Packing MirrorPacking(const Instance& instance, const Packing& packing);

struct GeneratedThreePartition {
  ThreePartitionInstance tp;
  std::optional<TripleCover> cover;  // set for yes-instances
};

/// n zero-sum triples with entries in [-range, range], shuffled.
GeneratedThreePartition RandomYesInstance(int n, std::int64_t range,
                                          std::mt19937_64& rng);

/// A perturbed yes-instance that the exhaustive solver certifies has no
/// cover. Requires 2 <= n <= 6.
GeneratedThreePartition RandomNoInstance(int n, std::int64_t range,
                                         std::mt19937_64& rng);

}  // namespace stripack
