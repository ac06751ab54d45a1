#pragma once

#include <cstddef>
#include <cstdint>

#include "bils/matrix.hpp"

namespace bils {

/// Per-coordinate integer intervals [lower_i, upper_i] with lower_i < upper_i.
class BoxConstraint {
 public:
  BoxConstraint() = default;
  BoxConstraint(IntVector lower, IntVector upper);
  /// Same interval [lo, hi] on all n coordinates.
  static BoxConstraint uniform(std::size_t n, std::int64_t lo, std::int64_t hi);

  std::size_t size() const noexcept { return lower_.size(); }
  std::int64_t lower(std::size_t i) const noexcept { return lower_[i]; }
  std::int64_t upper(std::size_t i) const noexcept { return upper_[i]; }
  const IntVector& lowers() const noexcept { return lower_; }
  const IntVector& uppers() const noexcept { return upper_; }
  bool contains(std::size_t i, std::int64_t z) const noexcept {
    return lower_[i] <= z && z <= upper_[i];
  }

  void swap(std::size_t a, std::size_t b) noexcept;
  /// Moves interval `from` to position `to` (to > from), shifting the ones between left.
  void rotate_to(std::size_t from, std::size_t to) noexcept;

  friend bool operator==(const BoxConstraint&, const BoxConstraint&) = default;

 private:
  IntVector lower_;
  IntVector upper_;
};

/// True when integer a is strictly preferred over b as a rounding of c:
/// closer to c; on a distance tie the one with smaller magnitude; if the
/// magnitudes tie as well (c == 0, a == -b) the smaller value.
bool rounds_before(std::int64_t a, std::int64_t b, double c) noexcept;

/// Nearest integer to c in [lo, hi] under the rounds_before order. Values of
/// c outside the interval clamp to the nearer end. Throws kEmptyBox if lo > hi.
std::int64_t nearest_in_box(double c, std::int64_t lo, std::int64_t hi);

/// Nearest integer to c in [lo, hi] with `excluded` removed.
std::int64_t second_nearest_in_box(double c, std::int64_t lo, std::int64_t hi,
                                   std::int64_t excluded);

}  // namespace bils
