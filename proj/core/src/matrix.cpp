#include "bils/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "bils/error.hpp"

namespace bils {

namespace {

void check_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kInvalidArgument, "matrix dimensions must be positive");
  }
}

}  // namespace

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_shape(rows, cols);
  data_.assign(rows * cols, 0.0);
}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  check_shape(rows, cols);
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch, "entry count does not match rows*cols");
  }
  if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::kInvalidArgument, "matrix entries must be finite");
  }
}

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  check_shape(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
    }
    for (double v : r) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kInvalidArgument, "matrix entries must be finite");
      }
      data_.push_back(v);
    }
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Mat::col(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_) {
    throw Error(ErrorCode::kIndexOutOfRange, "block exceeds matrix bounds");
  }
  Mat out(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0), ncols,
                out.data_.begin() + static_cast<std::ptrdiff_t>(i * ncols));
  }
  return out;
}

Mat Mat::transposed() const {
  Mat out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Mat Mat::without_column(std::size_t j) const {
  if (j >= cols_ || cols_ < 2) {
    throw Error(ErrorCode::kIndexOutOfRange, "cannot remove column");
  }
  Mat out(rows_, cols_ - 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t c = 0, oc = 0; c < cols_; ++c) {
      if (c != j) out(i, oc++) = (*this)(i, c);
    }
  }
  return out;
}

Mat Mat::permuted_columns(std::span<const std::size_t> perm) const {
  if (perm.size() != cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "permutation length != column count");
  }
  Mat out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) out(i, k) = (*this)(i, perm[k]);
  return out;
}

void Mat::swap_columns(std::size_t a, std::size_t b) noexcept {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

double Mat::frobenius_norm() const noexcept { return norm2(data_); }

double Mat::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kDimensionMismatch, "matmul shapes");
  Mat out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += ail * b(l, j);
    }
  return out;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "subtraction shapes");
  }
  Mat out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

Mat transpose_times(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::kDimensionMismatch, "a^T b shapes");
  Mat out(a.cols(), b.cols());
  for (std::size_t l = 0; l < a.rows(); ++l)
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double ali = a(l, i);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += ali * b(l, j);
    }
  return out;
}

Vector operator*(const Mat& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::kDimensionMismatch, "matvec shapes");
  Vector out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), x);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) noexcept {
  // Scaled accumulation so huge or tiny entries do not over/underflow.
  double scale = 0.0;
  double ssq = 1.0;
  for (double v : a) {
    if (v == 0.0) continue;
    const double av = std::abs(v);
    if (scale < av) {
      ssq = 1.0 + ssq * (scale / av) * (scale / av);
      scale = av;
    } else {
      ssq += (av / scale) * (av / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

}  // namespace bils
