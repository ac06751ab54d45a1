#include "bils/box.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "bils/error.hpp"

namespace bils {

BoxConstraint::BoxConstraint(IntVector lower, IntVector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "box bounds have different lengths");
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "box requires lower < upper at coordinate " + std::to_string(i));
    }
  }
}

BoxConstraint BoxConstraint::uniform(std::size_t n, std::int64_t lo, std::int64_t hi) {
  return BoxConstraint(IntVector(n, lo), IntVector(n, hi));
}

void BoxConstraint::swap(std::size_t a, std::size_t b) noexcept {
  std::swap(lower_[a], lower_[b]);
  std::swap(upper_[a], upper_[b]);
}

void BoxConstraint::rotate_to(std::size_t from, std::size_t to) noexcept {
  const auto f = static_cast<std::ptrdiff_t>(from);
  const auto t = static_cast<std::ptrdiff_t>(to);
  std::rotate(lower_.begin() + f, lower_.begin() + f + 1, lower_.begin() + t + 1);
  std::rotate(upper_.begin() + f, upper_.begin() + f + 1, upper_.begin() + t + 1);
}

bool rounds_before(std::int64_t a, std::int64_t b, double c) noexcept {
  const double da = std::abs(static_cast<double>(a) - c);
  const double db = std::abs(static_cast<double>(b) - c);
  if (da != db) return da < db;
  // |a| compared without overflow on INT64_MIN.
  const auto mag = [](std::int64_t v) {
    return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1u : static_cast<std::uint64_t>(v);
  };
  if (mag(a) != mag(b)) return mag(a) < mag(b);
  return a < b;
}

std::int64_t nearest_in_box(double c, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw Error(ErrorCode::kEmptyBox, "lo > hi");
  if (std::isnan(c)) throw Error(ErrorCode::kInvalidArgument, "center is NaN");
  if (c <= static_cast<double>(lo)) return lo;
  if (c >= static_cast<double>(hi)) return hi;
  // lo < c < hi, so floor(c) and floor(c) + 1 both lie in [lo, hi].
  const auto below = std::clamp(static_cast<std::int64_t>(std::floor(c)), lo, hi);
  const std::int64_t above = below < hi ? below + 1 : below;
  return rounds_before(above, below, c) ? above : below;
}

std::int64_t second_nearest_in_box(double c, std::int64_t lo, std::int64_t hi,
                                   std::int64_t excluded) {
  if (lo > hi) throw Error(ErrorCode::kEmptyBox, "lo > hi");
  if (excluded < lo || excluded > hi) {
    throw Error(ErrorCode::kInvalidArgument, "excluded value is outside the box");
  }
  std::optional<std::int64_t> left;
  std::optional<std::int64_t> right;
  if (excluded > lo) left = nearest_in_box(c, lo, excluded - 1);
  if (excluded < hi) right = nearest_in_box(c, excluded + 1, hi);
  if (!left && !right) throw Error(ErrorCode::kEmptyBox, "box has a single element");
  if (!left) return *right;
  if (!right) return *left;
  return rounds_before(*right, *left, c) ? *right : *left;
}

}  // namespace bils
