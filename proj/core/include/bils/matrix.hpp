#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace bils {

using Vector = std::vector<double>;
using IntVector = std::vector<std::int64_t>;

/// Dense real matrix, row-major. Every constructed matrix has rows, cols >= 1
/// and finite entries; a default-constructed Mat is the empty placeholder.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  Mat(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  Mat(std::initializer_list<std::initializer_list<double>> rows);

  static Mat identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }

  Vector col(std::size_t j) const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
  Mat transposed() const;
  Mat without_column(std::size_t j) const;
  /// Columns reordered so that result column k is column perm[k] of this.
  Mat permuted_columns(std::span<const std::size_t> perm) const;
  void swap_columns(std::size_t a, std::size_t b) noexcept;

  double frobenius_norm() const noexcept;
  double max_abs() const noexcept;

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
/// a^T * b without forming the transpose.
Mat transpose_times(const Mat& a, const Mat& b);
Vector operator*(const Mat& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b) noexcept;
double norm2(std::span<const double> a) noexcept;

}  // namespace bils
