#include "bils/oracle.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "bils/error.hpp"

namespace bils::oracle {

SolveResult brute_force_solve(const BilsProblem& problem, EnumerationBudget budget) {
  if (budget.max_points < 1) throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
  const std::size_t m = problem.m();
  const std::size_t n = problem.n();
  const auto& box = problem.box();
  const Mat& h = problem.h();
  const Vector& y = problem.y();

  std::uint64_t points = 1;
  for (std::size_t i = 0; i < n; ++i) {
    // Width computed in unsigned arithmetic; a full-range box overflows to 0.
    const std::uint64_t width =
        static_cast<std::uint64_t>(box.upper(i)) - static_cast<std::uint64_t>(box.lower(i)) + 1;
    if (width == 0 || width > budget.max_points || points > budget.max_points / width) {
      throw Error(ErrorCode::kBudgetExceeded, "box too large to enumerate");
    }
    points *= width;
  }

  IntVector x = box.lowers();
  IntVector best = x;
  double best_sq = std::numeric_limits<double>::infinity();
  std::uint64_t visited = 0;
  while (true) {
    double sq = 0.0;
    for (std::size_t row = 0; row < m; ++row) {
      double res = y[row];
      for (std::size_t j = 0; j < n; ++j) res -= h(row, j) * static_cast<double>(x[j]);
      sq += res * res;
    }
    ++visited;
    if (sq < best_sq) {
      best_sq = sq;
      best = x;
    }
    std::size_t i = n;
    while (i > 0 && x[i - 1] == box.upper(i - 1)) {
      x[i - 1] = box.lower(i - 1);
      --i;
    }
    if (i == 0) break;
    ++x[i - 1];
  }

  SolveResult out;
  out.x = std::move(best);
  out.residual = std::sqrt(best_sq);
  out.stats.leaves_found = visited;
  return out;
}

Mat pseudoinverse_direct(const Mat& h) {
  const std::size_t n = h.cols();
  Mat gram = transpose_times(h, h);
  Mat inv = Mat::identity(n);
  const double scale = gram.max_abs();

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(gram(row, col)) > std::abs(gram(pivot, col))) pivot = row;
    }
    if (!(std::abs(gram(pivot, col)) > 1e-14 * scale)) {
      throw Error(ErrorCode::kRankDeficient, "Gram matrix is singular");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(gram(pivot, c), gram(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const double d = gram(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      gram(col, c) /= d;
      inv(col, c) /= d;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col) continue;
      const double f = gram(row, col);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        gram(row, c) -= f * gram(col, c);
        inv(row, c) -= f * inv(col, c);
      }
    }
  }
  return h * inv;
}

PermutationMatch compare_permutations(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "permutations have different lengths");
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) return PermutationMatch{false, k};
  }
  return PermutationMatch{};
}

}  // namespace bils::oracle
