#include "bils/problem.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "bils/error.hpp"

namespace bils {

Permutation::Permutation(std::vector<std::size_t> p) : p_(std::move(p)) {
  std::vector<bool> seen(p_.size(), false);
  for (std::size_t v : p_) {
    if (v >= p_.size() || seen[v]) {
      throw Error(ErrorCode::kInvalidArgument, "permutation is not a bijection");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return Permutation(std::move(p));
}

BilsProblem::BilsProblem(Mat h, Vector y, BoxConstraint box)
    : h_(std::move(h)), y_(std::move(y)), box_(std::move(box)) {
  if (h_.empty()) throw Error(ErrorCode::kInvalidArgument, "H is empty");
  if (h_.rows() < h_.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "need m >= n");
  }
  if (y_.size() != h_.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "y length must equal m");
  }
  if (box_.size() != h_.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "box length must equal n");
  }
  for (double v : y_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "y must be finite");
  }
}

double BilsProblem::residual(std::span<const std::int64_t> x) const {
  if (x.size() != n()) throw Error(ErrorCode::kDimensionMismatch, "x length must equal n");
  Vector r = y_;
  for (std::size_t i = 0; i < m(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n(); ++j) s += h_(i, j) * static_cast<double>(x[j]);
    r[i] -= s;
  }
  return norm2(r);
}

std::uint64_t SearchStats::total_nodes() const noexcept {
  return std::accumulate(nodes_per_level.begin(), nodes_per_level.end(), std::uint64_t{0});
}

ReducedProblem reduce(const BilsProblem& problem, FlopCounter* counter) {
  auto qr = householder_qr_with_rhs(problem.h(), problem.y(), counter);
  return ReducedProblem{std::move(qr.r), std::move(qr.ybar), problem.box(),
                        Permutation::identity(problem.n()), qr.residual_sq};
}

IntVector unpermute_solution(std::span<const std::int64_t> z, const Permutation& perm) {
  if (z.size() != perm.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "solution and permutation lengths differ");
  }
  IntVector out(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) out[perm[k]] = z[k];
  return out;
}

IntVector permute_solution(std::span<const std::int64_t> x, const Permutation& perm) {
  if (x.size() != perm.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "solution and permutation lengths differ");
  }
  IntVector out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[perm[k]];
  return out;
}

}  // namespace bils
