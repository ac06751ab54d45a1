#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "bils/matrix.hpp"
#include "bils/problem.hpp"

namespace bils {

/// Initial squared radius. Infinite makes the first leaf the Babai point.
class RadiusPolicy {
 public:
  static RadiusPolicy infinite() noexcept { return RadiusPolicy{}; }
  /// Throws kInvalidArgument unless beta0 > 0.
  static RadiusPolicy fixed(double beta0);

  std::optional<double> beta0() const noexcept { return beta0_; }

 private:
  std::optional<double> beta0_;
};

/// Emits the integers of [lo, hi] in nondecreasing distance from the center,
/// ties resolved by rounds_before (smaller magnitude first). Each integer is
/// emitted once; the enumerator is exhausted after hi - lo + 1 calls.
class LevelEnumerator {
 public:
  LevelEnumerator() = default;
  LevelEnumerator(double center, std::int64_t lo, std::int64_t hi);

  bool exhausted() const noexcept { return !first_pending_ && !has_down_ && !has_up_; }
  std::int64_t next();
  double center() const noexcept { return center_; }

 private:
  double center_ = 0.0;
  std::int64_t lo_ = 0;
  std::int64_t hi_ = 0;
  std::int64_t first_ = 0;
  std::int64_t down_ = 0;
  std::int64_t up_ = 0;
  bool first_pending_ = false;
  bool has_down_ = false;
  bool has_up_ = false;
};

/// A candidate rejected at `level` because partial cost >= beta. fixed[0] is
/// the rejected value at `level`; fixed[i] is the value at level + i.
struct PruneEvent {
  std::size_t level = 0;
  IntVector fixed;
  double cost = 0.0;
  double beta = 0.0;
};

struct SearchOptions {
  RadiusPolicy radius = RadiusPolicy::infinite();
  std::function<void(const PruneEvent&)> on_prune;
};

/// r_kk^2 (x_k - c_k)^2.
double level_cost(double r_kk, std::int64_t x_k, double c_k) noexcept;

/// c_k = (ybar_k - sum_{j>k} r_kj x_j) / r_kk, reading x[k+1..n-1].
double compute_c(std::size_t k, const Mat& r, std::span<const double> ybar,
                 std::span<const std::int64_t> x) noexcept;

/// Depth-first sphere decoding of min ||ybar - R z|| over the box. Returns
/// the optimum mapped back to original column order; with a fixed radius
/// that admits no point, throws kRadiusTooSmall. Among equal-cost optima the
/// first leaf reached wins.
SolveResult solve(const ReducedProblem& reduced, const SearchOptions& options = {});

}  // namespace bils
