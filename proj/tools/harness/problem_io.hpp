#pragma once

#include <string>
#include <string_view>

#include "bils/problem.hpp"
#include "bils/solver.hpp"

namespace bils::harness {

/// Problem file: one JSON object with keys m, n, H (row-major, m*n reals),
/// y (m reals), l and u (n integers each). Reals are written with 17
/// significant digits so reading a file back reproduces every bit.
std::string problem_to_json(const BilsProblem& problem);

/// Throws Error(kParseError) on malformed JSON, missing keys, wrong types or
/// inconsistent sizes; problem-level violations keep their own codes.
BilsProblem problem_from_json(std::string_view text);

/// {"alg", "n", "x", "residual", "nodes", "nodes_per_level", "leaves",
///  "radius_updates", "prune_events", "perm"}; indices are 0-based.
std::string solve_result_to_json(const SolveResult& result, Ordering ordering,
                                 const Permutation& perm);

/// %.17g formatting used by every writer in the harness.
std::string format_real(double v);

}  // namespace bils::harness
