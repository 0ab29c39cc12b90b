#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stripack {

enum class ErrorCode {
  kInvalidInput,
  kParse,
  kOverflow,
  kInvalidCover,
  kNotTightlyPacked,
  kBadRun,
  kNoFeasiblePair,
  kDegenerateGrid,
  kGridViolation,
  kCapacityExceeded,
  kInvariantBroken,
  kTooManyDistinctHeights,
  kStripOverflow,
  kGapDeficit,
  kSmallItemOverflow,
  kLimitExceeded,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Checked 64-bit arithmetic; throws Error(kOverflow).
std::int64_t CheckedAdd(std::int64_t a, std::int64_t b);
std::int64_t CheckedMul(std::int64_t a, std::int64_t b);

}  // namespace stripack
