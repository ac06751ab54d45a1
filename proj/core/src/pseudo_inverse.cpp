#include <cmath>
#include <utility>

#include "bils/error.hpp"
#include "bils/reorder.hpp"

namespace bils {

DensePseudoInverse compute_g_dense(const Mat& h, FlopCounter* counter) {
  const auto qr = householder_thin_qr(h, counter);
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();

  // Each row of G solves R g^T = q^T (rows of G R^T = Q1), by back substitution.
  DensePseudoInverse out{Mat(m, n), std::vector<bool>(n, true), Vector(n, 0.0)};
  for (std::size_t row = 0; row < m; ++row) {
    for (std::size_t i = n; i-- > 0;) {
      double s = qr.q(row, i);
      for (std::size_t l = i + 1; l < n; ++l) s -= qr.r(i, l) * out.g(row, l);
      out.g(row, i) = s / qr.r(i, i);
      tally(counter, n - i);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t row = 0; row < m; ++row) s += out.g(row, i) * out.g(row, i);
    out.col_norms_sq[i] = s;
    tally(counter, m);
  }
  return out;
}

DensePseudoInverse sw_g_update(DensePseudoInverse state, std::size_t j, FlopCounter* counter) {
  const std::size_t m = state.g.rows();
  const std::size_t n = state.g.cols();
  if (j >= n) throw Error(ErrorCode::kIndexOutOfRange, "sw_g_update column index");
  if (!state.active[j]) throw Error(ErrorCode::kInvalidArgument, "column already removed");
  const double gj_sq = state.col_norms_sq[j];
  if (!(gj_sq > 0.0)) throw Error(ErrorCode::kInvalidArgument, "g_j has zero norm");

  state.active[j] = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!state.active[i]) continue;
    double proj = 0.0;
    for (std::size_t row = 0; row < m; ++row) proj += state.g(row, j) * state.g(row, i);
    const double coef = proj / gj_sq;
    double norm_sq = 0.0;
    for (std::size_t row = 0; row < m; ++row) {
      state.g(row, i) -= coef * state.g(row, j);
      norm_sq += state.g(row, i) * state.g(row, i);
    }
    state.col_norms_sq[i] = norm_sq;
    tally(counter, 3 * m);
  }
  return state;
}

}  // namespace bils
