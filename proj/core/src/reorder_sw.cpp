#include <cmath>
#include <utility>

#include "bils/error.hpp"
#include "bils/reorder.hpp"
#include "candidate.hpp"

namespace bils {

ReducedProblem reorder_sw(const BilsProblem& problem, const ReorderOptions& options) {
  FlopCounter* flops = options.flops;
  const Mat& h = problem.h();
  const std::size_t m = problem.m();
  const std::size_t n = problem.n();
  const BoxConstraint& box = problem.box();

  DensePseudoInverse state = compute_g_dense(h, flops);
  Vector y = problem.y();
  std::vector<std::size_t> order(n);

#if defined(BILS_DEBUG_CHECKS)
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t row = 0; row < m; ++row) s += state.g(row, i) * h(row, i);
    if (std::abs(s - 1.0) > 1e-8) {
      throw Error(ErrorCode::kInconsistentState, "g_i^T h_i != 1");
    }
  }
#endif

  for (std::size_t k = n; k >= 2; --k) {
    ReorderStep step;
    step.active = k;
    double max_dist = -1.0;
    std::size_t j = 0;
    std::int64_t xj = 0;

    for (std::size_t i = 0; i < n; ++i) {
      if (!state.active[i]) continue;
      double alpha = 0.0;
      for (std::size_t row = 0; row < m; ++row) alpha += y[row] * state.g(row, i);
      const double norm = std::sqrt(state.col_norms_sq[i]);
      tally(flops, m + 1);
      if (!(norm >= kMinPseudoInverseNorm)) {
        throw Error(ErrorCode::kRankDeficient, "pseudo-inverse column vanished");
      }
      auto score =
          detail::round_candidate(i, step.candidates.size(), alpha, box.lower(i), box.upper(i));
      score.dist = std::abs(alpha - static_cast<double>(score.x_second)) / norm;
      if (score.dist > max_dist) {
        max_dist = score.dist;
        j = i;
        xj = score.x_nearest;
        step.chosen = step.candidates.size();
      }
      step.candidates.push_back(score);
    }

    order[k - 1] = j;
    // y -= h_j x_j, without projecting onto the complement of g_j.
    for (std::size_t row = 0; row < m; ++row) y[row] -= h(row, j) * static_cast<double>(xj);
    tally(flops, m);
    state = sw_g_update(std::move(state), j, flops);
    if (options.trace != nullptr) options.trace->steps.push_back(std::move(step));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (state.active[i]) order[0] = i;
  }

  // Only the order comes out of the pseudo-inverse iteration; R and ybar
  // come from factoring the permuted H against the original y.
  Permutation perm(std::move(order));
  auto qr = householder_qr_with_rhs(h.permuted_columns(perm.values()), problem.y(), flops);
  IntVector lower(n);
  IntVector upper(n);
  for (std::size_t k = 0; k < n; ++k) {
    lower[k] = box.lower(perm[k]);
    upper[k] = box.upper(perm[k]);
  }
  return ReducedProblem{std::move(qr.r), std::move(qr.ybar),
                        BoxConstraint(std::move(lower), std::move(upper)), std::move(perm),
                        qr.residual_sq};
}

}  // namespace bils
