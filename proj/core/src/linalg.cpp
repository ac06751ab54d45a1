#include "bils/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "bils/error.hpp"

namespace bils {

namespace {

// Householder reflectors for an m x n matrix; v_k lives in rows k..m-1.
struct Reflectors {
  Mat r;  // upper n x n part of the reduced matrix, sign not yet normalized
  std::vector<Vector> v;
  Vector beta;
};

Reflectors factor(const Mat& h, FlopCounter* counter) {
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  if (m < n) {
    throw Error(ErrorCode::kDimensionMismatch, "QR requires rows >= cols");
  }
  Mat a = h;
  Reflectors out;
  out.v.resize(n);
  out.beta.assign(n, 0.0);

  Vector x;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t len = m - k;
    x.resize(len);
    for (std::size_t i = 0; i < len; ++i) x[i] = a(k + i, k);
    const double normx = norm2(x);
    tally(counter, len);
    if (normx == 0.0) {
      out.v[k].assign(len, 0.0);
      continue;
    }
    const double head = x[0];
    const double alpha = -std::copysign(normx, head);
    x[0] -= alpha;
    // v^T v = 2 ||x|| (||x|| + |x_0|), so beta = 2 / v^T v.
    const double beta = 1.0 / (normx * (normx + std::abs(head)));
    a(k, k) = alpha;
    for (std::size_t i = 1; i < len; ++i) a(k + i, k) = 0.0;
    for (std::size_t j = k + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < len; ++i) s += x[i] * a(k + i, j);
      s *= beta;
      for (std::size_t i = 0; i < len; ++i) a(k + i, j) -= s * x[i];
      tally(counter, 2 * len);
    }
    out.v[k] = x;
    out.beta[k] = beta;
  }

  const double tol = kRankTolerance * h.frobenius_norm();
  for (std::size_t k = 0; k < n; ++k) {
    if (!(std::abs(a(k, k)) > tol)) {
      throw Error(ErrorCode::kRankDeficient,
                  "matrix is numerically rank deficient at column " + std::to_string(k));
    }
  }
  out.r = a.block(0, 0, n, n);
  return out;
}

void apply_reflector(const Vector& v, double beta, std::span<double> y, std::size_t k,
                     FlopCounter* counter) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * y[k + i];
  s *= beta;
  for (std::size_t i = 0; i < v.size(); ++i) y[k + i] -= s * v[i];
  tally(counter, 2 * v.size());
}

void negate_row(Mat& m, std::size_t row, std::size_t col_begin, std::size_t col_end) {
  for (std::size_t c = col_begin; c < col_end; ++c) m(row, c) = -m(row, c);
}

#if defined(BILS_DEBUG_CHECKS)
// Row and column j of R^T G, O(k^2).
void check_inverse_transpose(const Mat& r, const Mat& g, std::size_t j) {
  const std::size_t k = r.rows();
  const double tol = 1e-6 * std::max(1.0, static_cast<double>(k) * r.max_abs() * g.max_abs());
  for (std::size_t t = 0; t < k; ++t) {
    double col = 0.0;
    double row = 0.0;
    for (std::size_t l = 0; l < k; ++l) {
      col += r(l, t) * g(l, j);
      row += r(l, j) * g(l, t);
    }
    const double expect = t == j ? 1.0 : 0.0;
    if (std::abs(col - expect) > tol || std::abs(row - expect) > tol) {
      throw Error(ErrorCode::kInconsistentState, "G is not R^{-T}");
    }
  }
}
#endif

}  // namespace

GivensRotation GivensRotation::zeroing(std::size_t i, std::size_t k, double a,
                                       double b) noexcept {
  GivensRotation g;
  g.i = i;
  g.k = k;
  if (b == 0.0) return g;
  const double r = std::hypot(a, b);
  g.c = a / r;
  g.s = b / r;
  return g;
}

void RowTransform::apply(Mat& m, std::size_t col_begin, std::size_t col_end,
                         FlopCounter* counter) const {
  for (const auto& rot : rotations) {
    for (std::size_t c = col_begin; c < col_end; ++c) rot.apply(m(rot.i, c), m(rot.k, c));
    tally(counter, 4 * (col_end - col_begin));
  }
  for (std::size_t row : negated_rows) negate_row(m, row, col_begin, col_end);
}

void RowTransform::apply(std::span<double> v, FlopCounter* counter) const {
  for (const auto& rot : rotations) {
    rot.apply(v[rot.i], v[rot.k]);
    tally(counter, 4);
  }
  for (std::size_t row : negated_rows) v[row] = -v[row];
}

QrWithRhs householder_qr_with_rhs(const Mat& h, std::span<const double> y,
                                  FlopCounter* counter) {
  if (y.size() != h.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "y length must equal rows of H");
  }
  Reflectors f = factor(h, counter);
  const std::size_t n = h.cols();

  Vector work(y.begin(), y.end());
  for (std::size_t k = 0; k < n; ++k) apply_reflector(f.v[k], f.beta[k], work, k, counter);

  QrWithRhs out;
  out.r = std::move(f.r);
  out.ybar.assign(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(n));
  out.residual_sq = 0.0;
  for (std::size_t i = n; i < work.size(); ++i) out.residual_sq += work[i] * work[i];
  for (std::size_t k = 0; k < n; ++k) {
    if (out.r(k, k) < 0.0) {
      negate_row(out.r, k, k, n);
      out.ybar[k] = -out.ybar[k];
    }
  }
  return out;
}

ThinQr householder_thin_qr(const Mat& h, FlopCounter* counter) {
  Reflectors f = factor(h, counter);
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();

  // Q1 = H_0 H_1 ... H_{n-1} [I_n; 0], accumulated right to left.
  Mat q(m, n);
  for (std::size_t i = 0; i < n; ++i) q(i, i) = 1.0;
  Vector column(m);
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t c = k; c < n; ++c) {
      for (std::size_t i = 0; i < m; ++i) column[i] = q(i, c);
      apply_reflector(f.v[k], f.beta[k], column, k, counter);
      for (std::size_t i = 0; i < m; ++i) q(i, c) = column[i];
    }
  }

  ThinQr out{std::move(q), std::move(f.r)};
  for (std::size_t k = 0; k < n; ++k) {
    if (out.r(k, k) < 0.0) {
      negate_row(out.r, k, k, n);
      for (std::size_t i = 0; i < m; ++i) out.q(i, k) = -out.q(i, k);
    }
  }
  return out;
}

Mat lower_tri_inv_transpose(const Mat& r, FlopCounter* counter) {
  const std::size_t n = r.rows();
  if (r.cols() != n) throw Error(ErrorCode::kDimensionMismatch, "R must be square");
  for (std::size_t k = 0; k < n; ++k) {
    if (r(k, k) == 0.0) {
      throw Error(ErrorCode::kSingularDiagonal, "zero diagonal at " + std::to_string(k));
    }
  }
  Mat g(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    g(c, c) = 1.0 / r(c, c);
    for (std::size_t row = c + 1; row < n; ++row) {
      double s = 0.0;
      for (std::size_t l = c; l < row; ++l) s += r(l, row) * g(l, c);
      g(row, c) = -s / r(row, row);
      tally(counter, row - c);
    }
  }
  return g;
}

Retriangularized swap_column_retriangularize(const Mat& r, std::span<const double> ybar,
                                             std::size_t i, FlopCounter* counter) {
  const std::size_t k = r.rows();
  if (r.cols() != k || ybar.size() != k) {
    throw Error(ErrorCode::kDimensionMismatch, "swap_column_retriangularize shapes");
  }
  if (i >= k) throw Error(ErrorCode::kIndexOutOfRange, "swap column index");

  Retriangularized out{r, Vector(ybar.begin(), ybar.end()), {}};
  if (i + 1 == k) return out;

  Mat& a = out.r;
  auto& rots = out.transform.rotations;
  a.swap_columns(i, k - 1);

  // Column i is now full below the diagonal: chase it up from the bottom.
  // Each rotation leaves one subdiagonal entry behind in the next column.
  for (std::size_t l = k - 1; l > i; --l) {
    const auto rot = GivensRotation::zeroing(l - 1, l, a(l - 1, i), a(l, i));
    for (std::size_t c = i; c < k; ++c) rot.apply(a(l - 1, c), a(l, c));
    a(l, i) = 0.0;
    rot.apply(out.y[l - 1], out.y[l]);
    tally(counter, 4 * (k - i) + 4);
    rots.push_back(rot);
  }
  // Clear the upper-Hessenberg band left in columns i+1..k-2.
  for (std::size_t l = i + 1; l + 1 < k; ++l) {
    const auto rot = GivensRotation::zeroing(l, l + 1, a(l, l), a(l + 1, l));
    for (std::size_t c = l; c < k; ++c) rot.apply(a(l, c), a(l + 1, c));
    a(l + 1, l) = 0.0;
    rot.apply(out.y[l], out.y[l + 1]);
    tally(counter, 4 * (k - l) + 4);
    rots.push_back(rot);
  }
  for (std::size_t l = i; l < k; ++l) {
    if (a(l, l) < 0.0) {
      negate_row(a, l, l, k);
      out.y[l] = -out.y[l];
      out.transform.negated_rows.push_back(l);
    }
  }
  return out;
}

ColumnRemoval remove_column_retriangularize(const Mat& r, const Mat& g,
                                            std::span<const double> ybar, std::size_t j,
                                            FlopCounter* counter) {
  const std::size_t k = r.rows();
  if (r.cols() != k || g.rows() != k || g.cols() != k || ybar.size() != k) {
    throw Error(ErrorCode::kDimensionMismatch, "remove_column_retriangularize shapes");
  }
  if (j >= k) throw Error(ErrorCode::kIndexOutOfRange, "remove column index");
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "cannot remove the only column");
#if defined(BILS_DEBUG_CHECKS)
  check_inverse_transpose(r, g, j);
#endif

  Mat rp = r.without_column(j);
  Mat gp = g.without_column(j);
  Vector removed = r.col(j);
  Vector y(ybar.begin(), ybar.end());
  RowTransform transform;

  const std::size_t width = k - 1;
  for (std::size_t l = j; l < width; ++l) {
    const auto rot = GivensRotation::zeroing(l, l + 1, rp(l, l), rp(l + 1, l));
    for (std::size_t c = l; c < width; ++c) rot.apply(rp(l, c), rp(l + 1, c));
    rp(l + 1, l) = 0.0;
    for (std::size_t c = 0; c < width; ++c) rot.apply(gp(l, c), gp(l + 1, c));
    rot.apply(removed[l], removed[l + 1]);
    rot.apply(y[l], y[l + 1]);
    tally(counter, 4 * (width - l) + 4 * width + 8);
    transform.rotations.push_back(rot);
  }
  for (std::size_t l = j; l < width; ++l) {
    if (rp(l, l) < 0.0) {
      negate_row(rp, l, l, width);
      negate_row(gp, l, 0, width);
      removed[l] = -removed[l];
      y[l] = -y[l];
      transform.negated_rows.push_back(l);
    }
  }
  if (removed[width] < 0.0) {
    negate_row(gp, width, 0, width);
    removed[width] = -removed[width];
    y[width] = -y[width];
    transform.negated_rows.push_back(width);
  }

  ColumnRemoval out;
  out.r = rp.block(0, 0, width, width);
  out.g = gp.block(0, 0, width, width);
  out.y.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(width));
  out.removed_column = std::move(removed);
  out.transform = std::move(transform);
  return out;
}

}  // namespace bils
