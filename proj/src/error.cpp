#include "stripack/error.hpp"

namespace stripack {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kInvalidCover: return "InvalidCover";
    case ErrorCode::kNotTightlyPacked: return "NotTightlyPacked";
    case ErrorCode::kBadRun: return "BadRun";
    case ErrorCode::kNoFeasiblePair: return "NoFeasiblePair";
    case ErrorCode::kDegenerateGrid: return "DegenerateGrid";
    case ErrorCode::kGridViolation: return "GridViolation";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kInvariantBroken: return "InvariantBroken";
    case ErrorCode::kTooManyDistinctHeights: return "TooManyDistinctHeights";
    case ErrorCode::kStripOverflow: return "StripOverflow";
    case ErrorCode::kGapDeficit: return "GapDeficit";
    case ErrorCode::kSmallItemOverflow: return "SmallItemOverflow";
    case ErrorCode::kLimitExceeded: return "LimitExceeded";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
      code_(code) {}

std::int64_t CheckedAdd(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(ErrorCode::kOverflow, "integer addition overflows 64 bits");
  }
  return r;
}

std::int64_t CheckedMul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(ErrorCode::kOverflow, "integer multiplication overflows 64 bits");
  }
  return r;
}

}  // namespace stripack
