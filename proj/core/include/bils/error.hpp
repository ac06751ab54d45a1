#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bils {

enum class ErrorCode {
  kDimensionMismatch,
  kInvalidArgument,
  kRankDeficient,
  kSingularDiagonal,
  kIndexOutOfRange,
  kInconsistentState,
  kEmptyBox,
  kRadiusTooSmall,
  kBudgetExceeded,
  kInvalidSpec,
  kParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// The single exception type thrown by the library; inspect code() to branch.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bils
