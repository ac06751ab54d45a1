#pragma once

// Independent reference computations for tests and acceptance runs. Nothing
// here shares code with the QR, reordering, or search paths.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "bils/matrix.hpp"
#include "bils/problem.hpp"

namespace bils::oracle {

struct EnumerationBudget {
  std::uint64_t max_points = 1'000'000;
};

/// Exhaustive minimizer of ||y - H x||_2 over the box, enumerated in
/// lexicographic order (x_0 most significant); the lexicographically
/// smallest minimizer wins ties. Throws kBudgetExceeded when the box holds
/// more than budget.max_points points.
SolveResult brute_force_solve(const BilsProblem& problem, EnumerationBudget budget = {});

/// (H^+)^T = H (H^T H)^{-1}, with the Gram matrix inverted by Gauss-Jordan
/// elimination. Throws kRankDeficient on a vanishing pivot.
Mat pseudoinverse_direct(const Mat& h);

struct PermutationMatch {
  bool equal = true;
  std::optional<std::size_t> first_mismatch;  // 0-based position
};

/// Throws kDimensionMismatch when the lengths differ.
PermutationMatch compare_permutations(const Permutation& a, const Permutation& b);

}  // namespace bils::oracle
