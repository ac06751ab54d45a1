#pragma once

#include <optional>
#include <string_view>

#include "bils/linalg.hpp"
#include "bils/problem.hpp"
#include "bils/reorder.hpp"
#include "bils/search.hpp"

namespace bils {

enum class Ordering { kNatural, kCh, kSw, kNew };

/// "natural", "ch", "sw", "new".
std::string_view to_string(Ordering ordering) noexcept;
std::optional<Ordering> parse_ordering(std::string_view name) noexcept;

/// Reduction under the chosen column ordering (kNatural is plain QR).
ReducedProblem reduce_with(const BilsProblem& problem, Ordering ordering,
                           const ReorderOptions& options = {});

/// Reduce, search, and report ||y - H x||_2 evaluated on the original problem.
SolveResult solve_problem(const BilsProblem& problem, Ordering ordering,
                          const SearchOptions& search = {});

}  // namespace bils
