#pragma once

// Column reordering for the box-constrained problem. All three algorithms
// pick, for k = n, n-1, ..., 2, the column to place at position k by
// maximizing the weighted distance from the real-valued estimate of that
// coordinate to its second-nearest box integer, then fix the coordinate at
// its nearest box integer and recurse on the k-1 remaining columns.
//
//   reorder_ch   retriangularizes after swapping each candidate to position
//                k (k Givens sweeps per step, O(n^4) overall).
//   reorder_sw   works on the dense pseudo-inverse G = (H^+)^T and deflates
//                it with a rank-one projection per step.
//   reorder_new  keeps the lower-triangular G = R^{-T} and updates R and G
//                together with one Givens sweep per step, O(n^3) overall.
//
// In exact arithmetic the three return the same permutation; they can only
// disagree when two candidates' scores tie to rounding precision.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "bils/linalg.hpp"
#include "bils/matrix.hpp"
#include "bils/problem.hpp"

namespace bils {

struct CandidateScore {
  std::size_t index = 0;     // original column of H
  std::size_t position = 0;  // position in the active block when scored
  double alpha = 0.0;        // real estimate of the coordinate
  std::int64_t x_nearest = 0;
  std::int64_t x_second = 0;
  double dist = 0.0;
};

struct ReorderStep {
  std::size_t active = 0;  // k, number of columns still unplaced
  std::vector<CandidateScore> candidates;
  std::size_t chosen = 0;  // index into candidates
};

struct ReorderTrace {
  std::vector<ReorderStep> steps;  // steps[0] places column n
};

struct ReorderOptions {
  FlopCounter* flops = nullptr;
  ReorderTrace* trace = nullptr;
  /// reorder_new only: called with the active (R, G) after every column removal.
  std::function<void(const Mat& r, const Mat& g)> on_triangular_update;
};

ReducedProblem reorder_ch(const BilsProblem& problem, const ReorderOptions& options = {});
ReducedProblem reorder_sw(const BilsProblem& problem, const ReorderOptions& options = {});
ReducedProblem reorder_new(const BilsProblem& problem, const ReorderOptions& options = {});

/// Transposed pseudo-inverse G = (H^+)^T of the columns not yet chosen.
/// Inactive columns keep stale data and must not be read.
struct DensePseudoInverse {
  Mat g;                     // m x n, column i is g_i
  std::vector<bool> active;
  Vector col_norms_sq;       // ||g_i||^2 for active i
};

/// G = Q1 R^{-T} from a Householder QR of H (H^T G = I).
DensePseudoInverse compute_g_dense(const Mat& h, FlopCounter* counter = nullptr);

/// Removes column j: g_i <- g_i - g_j (g_j^T g_i / ||g_j||^2) for every other
/// active i. The result is (H_{-j}^+)^T restricted to the remaining columns.
DensePseudoInverse sw_g_update(DensePseudoInverse state, std::size_t j,
                               FlopCounter* counter = nullptr);

/// Denominator floor for |alpha - x_second| / ||g_i||; smaller norms are
/// reported as kRankDeficient.
inline constexpr double kMinPseudoInverseNorm = 1e-300;

}  // namespace bils
