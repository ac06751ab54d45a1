#pragma once

// Dense kernels used by the reduction and the column-reordering algorithms.
//
// Index convention for this whole library: the mathematical description of
// these algorithms counts rows, columns and levels from 1 to n; every C++
// interface counts from 0 to n-1. "Column k" of a k-by-k active block in the
// documentation is therefore index k-1 here, and "level 1" of the search is
// index 0.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bils/matrix.hpp"

namespace bils {

/// Relative threshold for the full-column-rank test: |r_kk| > kRankTolerance * ||H||_F.
inline constexpr double kRankTolerance = 1e-12;

/// Coarse operation counter. One unit per scalar multiply-add; a Givens
/// rotation applied across a length-t pair of rows counts 4t.
struct FlopCounter {
  std::uint64_t units = 0;
};

inline void tally(FlopCounter* counter, std::uint64_t units) noexcept {
  if (counter != nullptr) counter->units += units;
}

/// Plane rotation acting on rows i < k:
///   [x_i]    [ c  s] [x_i]
///   [x_k] <- [-s  c] [x_k]
struct GivensRotation {
  std::size_t i = 0;
  std::size_t k = 0;
  double c = 1.0;
  double s = 0.0;

  /// Rotation that maps (a, b) in rows (i, k) to (hypot(a, b), 0).
  static GivensRotation zeroing(std::size_t i, std::size_t k, double a, double b) noexcept;

  void apply(double& xi, double& xk) const noexcept {
    const double t = c * xi + s * xk;
    xk = -s * xi + c * xk;
    xi = t;
  }
};

/// Orthogonal row transform V^T recorded as a rotation sequence followed by
/// sign flips of individual rows. Lets a caller replay the exact update on
/// columns or right-hand sides that the producing kernel did not see.
struct RowTransform {
  std::vector<GivensRotation> rotations;
  std::vector<std::size_t> negated_rows;

  bool is_identity() const noexcept { return rotations.empty() && negated_rows.empty(); }
  void apply(Mat& m, std::size_t col_begin, std::size_t col_end,
             FlopCounter* counter = nullptr) const;
  void apply(std::span<double> v, FlopCounter* counter = nullptr) const;
};

struct QrWithRhs {
  Mat r;                       // n x n upper triangular, r_kk > 0
  Vector ybar;                 // Q1^T y
  double residual_sq = 0.0;    // ||Q2^T y||^2, the real least-squares residual
};

/// Householder QR of an m x n matrix (m >= n), reflectors applied to y in
/// flight so Q1 is never formed. Diagonal of R is normalized to be positive.
/// Throws kRankDeficient when some |r_kk| <= kRankTolerance * ||H||_F.
QrWithRhs householder_qr_with_rhs(const Mat& h, std::span<const double> y,
                                  FlopCounter* counter = nullptr);

struct ThinQr {
  Mat q;  // m x n with orthonormal columns
  Mat r;  // n x n upper triangular, r_kk > 0
};

/// Same factorization with Q1 accumulated explicitly.
ThinQr householder_thin_qr(const Mat& h, FlopCounter* counter = nullptr);

/// G = R^{-T} (lower triangular) by forward substitution on R^T G = I.
Mat lower_tri_inv_transpose(const Mat& r, FlopCounter* counter = nullptr);

struct Retriangularized {
  Mat r;
  Vector y;
  RowTransform transform;
};

/// Swaps columns i and k-1 of the k x k upper-triangular r and restores the
/// triangle with adjacent-row Givens rotations, also applied to ybar.
/// Returns Rhat = V^T R P and yhat = V^T ybar; inputs are untouched.
Retriangularized swap_column_retriangularize(const Mat& r, std::span<const double> ybar,
                                             std::size_t i, FlopCounter* counter = nullptr);

struct ColumnRemoval {
  Mat r;                 // (k-1) x (k-1) upper triangular
  Mat g;                 // (k-1) x (k-1), equals r^{-T}
  Vector y;              // length k-1
  Vector removed_column; // deleted column of R after the same transform; entry k-1 > 0
  RowTransform transform;
};

/// Deletes column j of R (k x k) and of G = R^{-T}, restores R to upper and G
/// to lower triangular with one shared rotation sequence (also applied to
/// ybar), then drops the last row of each. G is updated, never recomputed.
ColumnRemoval remove_column_retriangularize(const Mat& r, const Mat& g,
                                            std::span<const double> ybar, std::size_t j,
                                            FlopCounter* counter = nullptr);

}  // namespace bils
