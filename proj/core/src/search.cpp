#include "bils/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bils/box.hpp"
#include "bils/error.hpp"

namespace bils {

RadiusPolicy RadiusPolicy::fixed(double beta0) {
  if (!(beta0 > 0.0) || std::isnan(beta0)) {
    throw Error(ErrorCode::kInvalidArgument, "initial radius must be positive");
  }
  RadiusPolicy p;
  p.beta0_ = beta0;
  return p;
}

LevelEnumerator::LevelEnumerator(double center, std::int64_t lo, std::int64_t hi)
    : center_(center), lo_(lo), hi_(hi) {
  first_ = nearest_in_box(center, lo, hi);
  first_pending_ = true;
  has_down_ = first_ > lo_;
  has_up_ = first_ < hi_;
  if (has_down_) down_ = first_ - 1;
  if (has_up_) up_ = first_ + 1;
}

std::int64_t LevelEnumerator::next() {
  if (first_pending_) {
    first_pending_ = false;
    return first_;
  }
  if (!has_down_ && !has_up_) {
    throw Error(ErrorCode::kEmptyBox, "enumerator exhausted");
  }
  const bool take_up = has_up_ && (!has_down_ || rounds_before(up_, down_, center_));
  if (take_up) {
    const std::int64_t z = up_;
    if (up_ == hi_) has_up_ = false; else ++up_;
    return z;
  }
  const std::int64_t z = down_;
  if (down_ == lo_) has_down_ = false; else --down_;
  return z;
}

double level_cost(double r_kk, std::int64_t x_k, double c_k) noexcept {
  const double d = r_kk * (static_cast<double>(x_k) - c_k);
  return d * d;
}

double compute_c(std::size_t k, const Mat& r, std::span<const double> ybar,
                 std::span<const std::int64_t> x) noexcept {
  double s = ybar[k];
  for (std::size_t j = k + 1; j < r.cols(); ++j) s -= r(k, j) * static_cast<double>(x[j]);
  return s / r(k, k);
}

SolveResult solve(const ReducedProblem& reduced, const SearchOptions& options) {
  const Mat& r = reduced.r;
  const std::size_t n = r.rows();
  if (r.cols() != n || reduced.ybar.size() != n || reduced.box.size() != n ||
      reduced.perm.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "inconsistent reduced problem");
  }
  const auto& box = reduced.box;

  double beta = options.radius.beta0().value_or(std::numeric_limits<double>::infinity());
  SolveResult result;
  SearchStats& stats = result.stats;
  stats.nodes_per_level.assign(n, 0);

  // Per-level state, valid for levels k..n-1 while the search sits at level k.
  std::vector<LevelEnumerator> enumerators(n);
  std::vector<double> above(n, 0.0);  // sum of level costs over levels > k
  IntVector x(n, 0);
  IntVector best;

  std::size_t k = n - 1;
  enumerators[k] = LevelEnumerator(compute_c(k, r, reduced.ybar, x), box.lower(k), box.upper(k));

  while (true) {
    LevelEnumerator& level = enumerators[k];
    if (level.exhausted()) {
      if (++k == n) break;
      continue;
    }
    const std::int64_t z = level.next();
    const double cost = above[k] + level_cost(r(k, k), z, level.center());
    if (!(cost < beta)) {
      // Later candidates at this level are no closer, so the level is done.
      ++stats.prune_events;
      if (options.on_prune) {
        PruneEvent ev{k, IntVector(x.begin() + static_cast<std::ptrdiff_t>(k), x.end()), cost,
                      beta};
        ev.fixed[0] = z;
        options.on_prune(ev);
      }
      if (++k == n) break;
      continue;
    }
    ++stats.nodes_per_level[k];
    x[k] = z;
    if (k == 0) {
      best = x;
      beta = cost;
      ++stats.leaves_found;
      ++stats.radius_updates;
      stats.radius_history.push_back(beta);
      continue;
    }
    --k;
    above[k] = cost;
    enumerators[k] =
        LevelEnumerator(compute_c(k, r, reduced.ybar, x), box.lower(k), box.upper(k));
  }

  if (best.empty()) {
    throw Error(ErrorCode::kRadiusTooSmall, "no box point inside the initial radius");
  }
  result.x = unpermute_solution(best, reduced.perm);
  result.residual = std::sqrt(std::max(0.0, beta + reduced.residual_offset_sq));
  return result;
}

}  // namespace bils
