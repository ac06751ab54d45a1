#include <cmath>
#include <numeric>
#include <optional>
#include <utility>

#include "bils/error.hpp"
#include "bils/reorder.hpp"
#include "candidate.hpp"

namespace bils {

ReducedProblem reorder_ch(const BilsProblem& problem, const ReorderOptions& options) {
  FlopCounter* flops = options.flops;
  const std::size_t n = problem.n();

  auto qr = householder_qr_with_rhs(problem.h(), problem.y(), flops);
  Mat r = std::move(qr.r);
  // yfull carries Q^T y for the final problem; ysel additionally has the
  // fixed coordinates x_j r_{:,j} subtracted and drives the selection.
  Vector yfull = qr.ybar;
  Vector ysel = std::move(qr.ybar);
  BoxConstraint box = problem.box();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t k = n; k >= 2; --k) {
    const Mat active = r.block(0, 0, k, k);
    const std::span<const double> ys(ysel.data(), k);

    ReorderStep step;
    step.active = k;
    std::optional<Retriangularized> best;
    double max_dist = -1.0;
    std::size_t j = 0;
    std::int64_t xj = 0;

    for (std::size_t i = 0; i < k; ++i) {
      auto trial = swap_column_retriangularize(active, ys, i, flops);
      const double rkk = trial.r(k - 1, k - 1);
      const double yk = trial.y[k - 1];
      auto score = detail::round_candidate(order[i], i, yk / rkk, box.lower(i), box.upper(i));
      score.dist = std::abs(rkk * static_cast<double>(score.x_second) - yk);
      tally(flops, 2);
      if (score.dist > max_dist) {
        max_dist = score.dist;
        j = i;
        xj = score.x_nearest;
        best = std::move(trial);
        step.chosen = step.candidates.size();
      }
      step.candidates.push_back(score);
    }

    // Columns already placed share rows 0..k-1 with the active block.
    best->transform.apply(r, k, n, flops);
    best->transform.apply(std::span<double>(yfull.data(), k), flops);
    for (std::size_t row = 0; row < k; ++row) {
      for (std::size_t c = 0; c < k; ++c) r(row, c) = best->r(row, c);
      ysel[row] = best->y[row] - best->r(row, k - 1) * static_cast<double>(xj);
    }
    tally(flops, k);

    box.swap(j, k - 1);
    std::swap(order[j], order[k - 1]);
    if (options.trace != nullptr) options.trace->steps.push_back(std::move(step));
  }

  return ReducedProblem{std::move(r), std::move(yfull), std::move(box),
                        Permutation(std::move(order)), qr.residual_sq};
}

}  // namespace bils
