#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "bils/box.hpp"
#include "bils/reorder.hpp"

namespace bils::detail {

/// Nearest and second-nearest box integers for a candidate whose coordinate
/// estimate is alpha. dist is filled in by the caller, whose formula differs.
inline CandidateScore round_candidate(std::size_t index, std::size_t position, double alpha,
                                      std::int64_t lo, std::int64_t hi) {
  CandidateScore s;
  s.index = index;
  s.position = position;
  s.alpha = alpha;
  s.x_nearest = nearest_in_box(alpha, lo, hi);
  s.x_second = second_nearest_in_box(alpha, lo, hi, s.x_nearest);
  return s;
}

}  // namespace bils::detail
