#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "bils/error.hpp"
#include "bils/reorder.hpp"
#include "candidate.hpp"

namespace bils {

ReducedProblem reorder_new(const BilsProblem& problem, const ReorderOptions& options) {
  FlopCounter* flops = options.flops;
  const std::size_t n = problem.n();

  auto qr = householder_qr_with_rhs(problem.h(), problem.y(), flops);
  Mat r = qr.r;                 // final factor; column k-1 is written when placed
  Mat active = std::move(qr.r);
  Mat g = lower_tri_inv_transpose(active, flops);
  Vector yfull = qr.ybar;
  Vector ysel = std::move(qr.ybar);
  BoxConstraint box = problem.box();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t k = n; k >= 2; --k) {
    ReorderStep step;
    step.active = k;
    double max_dist = -1.0;
    std::size_t j = 0;
    std::int64_t xj = 0;

    for (std::size_t i = 0; i < k; ++i) {
      // Only rows i..k-1 of the lower-triangular G contribute.
      double alpha = 0.0;
      double norm_sq = 0.0;
      for (std::size_t l = i; l < k; ++l) {
        alpha += ysel[l] * g(l, i);
        norm_sq += g(l, i) * g(l, i);
      }
      tally(flops, 2 * (k - i));
      const double norm = std::sqrt(norm_sq);
      if (!(norm >= kMinPseudoInverseNorm)) {
        throw Error(ErrorCode::kRankDeficient, "inverse factor column vanished");
      }
      auto score = detail::round_candidate(order[i], i, alpha, box.lower(i), box.upper(i));
      score.dist = std::abs(alpha - static_cast<double>(score.x_second)) / norm;
      if (score.dist > max_dist) {
        max_dist = score.dist;
        j = i;
        xj = score.x_nearest;
        step.chosen = i;
      }
      step.candidates.push_back(score);
    }

    // Row k-1 is dropped after the sweep, but the sweep still reads it.
    for (std::size_t l = 0; l + 1 < k; ++l) {
      ysel[l] -= active(l, j) * static_cast<double>(xj);
    }
    tally(flops, k - 1);

    auto removal = remove_column_retriangularize(active, g, ysel, j, flops);
    removal.transform.apply(r, k, n, flops);
    removal.transform.apply(std::span<double>(yfull.data(), k), flops);
    for (std::size_t l = 0; l < k; ++l) r(l, k - 1) = removal.removed_column[l];

    active = std::move(removal.r);
    g = std::move(removal.g);
    ysel = std::move(removal.y);

    // Removing column j shifts columns j+1..k-1 left; j moves to k-1.
    box.rotate_to(j, k - 1);
    std::rotate(order.begin() + static_cast<std::ptrdiff_t>(j),
                order.begin() + static_cast<std::ptrdiff_t>(j) + 1,
                order.begin() + static_cast<std::ptrdiff_t>(k));
    if (options.trace != nullptr) options.trace->steps.push_back(std::move(step));
    if (options.on_triangular_update) options.on_triangular_update(active, g);
  }
  r(0, 0) = active(0, 0);

  return ReducedProblem{std::move(r), std::move(yfull), std::move(box),
                        Permutation(std::move(order)), qr.residual_sq};
}

}  // namespace bils
