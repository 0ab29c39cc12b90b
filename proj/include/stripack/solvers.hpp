#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "stripack/error.hpp"
#include "stripack/geometry.hpp"
#include "stripack/reduction.hpp"

namespace stripack {

enum class Algorithm { kExact, kNfdh, kFfdh, kBottomLeft };

std::string_view AlgorithmName(Algorithm algorithm);
/// Accepts "exact", "nfdh", "ffdh", "bl" and "bottom_left".
std::optional<Algorithm> ParseAlgorithm(std::string_view name);

struct SolverConfig {
  Algorithm algorithm = Algorithm::kExact;
  std::int64_t node_limit = 20'000'000;
  std::int64_t time_limit_ms = 60'000;
  std::size_t max_items = 10;
};

/// Reads STRIPACK_NODE_LIMIT into config.node_limit when set.
SolverConfig WithEnvironmentOverrides(SolverConfig config);

/// Thrown when the exact search stops before proving optimality.
class LimitExceededError : public Error {
 public:
  LimitExceededError(const std::string& what, Packing incumbent)
      : Error(ErrorCode::kLimitExceeded, what), incumbent_(std::move(incumbent)) {}
  const Packing& incumbent() const { return incumbent_; }
  bool optimality_proven() const { return false; }

 private:
  Packing incumbent_;
};

/// Minimum-height packing by branch and bound over normal patterns.
Packing SolveExact(const Instance& instance, const SolverConfig& config = {});

/// Next-fit decreasing height.
Packing SolveNfdh(const Instance& instance);
/// First-fit decreasing height.
Packing SolveFfdh(const Instance& instance);
/// Items in input order, each at its lowest, then leftmost, feasible position.
Packing SolveBottomLeft(const Instance& instance);

Packing Solve(const Instance& instance, const SolverConfig& config);

/// Exhaustive search for a zero-sum triple cover. Exponential; n <= 6.
std::optional<TripleCover> BruteForceThreePartition(const ThreePartitionInstance& tp);

}  // namespace stripack
