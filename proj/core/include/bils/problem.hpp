#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bils/box.hpp"
#include "bils/linalg.hpp"
#include "bils/matrix.hpp"

namespace bils {

/// Column permutation: entry k is the original column placed at position k.
class Permutation {
 public:
  Permutation() = default;
  /// Throws kInvalidArgument unless p is a bijection on {0..n-1}.
  explicit Permutation(std::vector<std::size_t> p);
  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return p_.size(); }
  std::size_t operator[](std::size_t k) const noexcept { return p_[k]; }
  const std::vector<std::size_t>& values() const noexcept { return p_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> p_;
};

/// min ||y - H x||_2 over integer x in the box. H is m x n with m >= n.
class BilsProblem {
 public:
  BilsProblem(Mat h, Vector y, BoxConstraint box);

  const Mat& h() const noexcept { return h_; }
  const Vector& y() const noexcept { return y_; }
  const BoxConstraint& box() const noexcept { return box_; }
  std::size_t m() const noexcept { return h_.rows(); }
  std::size_t n() const noexcept { return h_.cols(); }

  /// ||y - H x||_2 evaluated directly.
  double residual(std::span<const std::int64_t> x) const;

  friend bool operator==(const BilsProblem&, const BilsProblem&) = default;

 private:
  Mat h_;
  Vector y_;
  BoxConstraint box_;
};

/// min ||ybar - R z||_2 over z in the permuted box, where z_k = x_{perm[k]}.
struct ReducedProblem {
  Mat r;                       // n x n upper triangular, r_kk > 0
  Vector ybar;
  BoxConstraint box;           // box.lower(k) == original lower(perm[k])
  Permutation perm;
  double residual_offset_sq = 0.0;  // ||y||^2 - ||ybar||^2, independent of x
};

struct SearchStats {
  std::vector<std::uint64_t> nodes_per_level;  // index 0 is the leaf level
  std::uint64_t leaves_found = 0;
  std::uint64_t radius_updates = 0;
  std::uint64_t prune_events = 0;
  std::vector<double> radius_history;  // beta after each leaf, strictly decreasing

  std::uint64_t total_nodes() const noexcept;
};

struct SolveResult {
  IntVector x;            // original column order
  double residual = 0.0;  // ||y - H x||_2
  SearchStats stats;
};

/// QR reduction with the identity permutation.
ReducedProblem reduce(const BilsProblem& problem, FlopCounter* counter = nullptr);

/// out[perm[k]] = z[k].
IntVector unpermute_solution(std::span<const std::int64_t> z, const Permutation& perm);
/// out[k] = x[perm[k]]; inverse of unpermute_solution.
IntVector permute_solution(std::span<const std::int64_t> x, const Permutation& perm);

}  // namespace bils
