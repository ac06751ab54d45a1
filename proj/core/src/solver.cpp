#include "bils/solver.hpp"

#include "bils/error.hpp"

namespace bils {

std::string_view to_string(Ordering ordering) noexcept {
  switch (ordering) {
    case Ordering::kNatural: return "natural";
    case Ordering::kCh: return "ch";
    case Ordering::kSw: return "sw";
    case Ordering::kNew: return "new";
  }
  return "natural";
}

std::optional<Ordering> parse_ordering(std::string_view name) noexcept {
  for (auto o : {Ordering::kNatural, Ordering::kCh, Ordering::kSw, Ordering::kNew}) {
    if (name == to_string(o)) return o;
  }
  return std::nullopt;
}

ReducedProblem reduce_with(const BilsProblem& problem, Ordering ordering,
                           const ReorderOptions& options) {
  switch (ordering) {
    case Ordering::kCh: return reorder_ch(problem, options);
    case Ordering::kSw: return reorder_sw(problem, options);
    case Ordering::kNew: return reorder_new(problem, options);
    case Ordering::kNatural: break;
  }
  return reduce(problem, options.flops);
}

SolveResult solve_problem(const BilsProblem& problem, Ordering ordering,
                          const SearchOptions& search) {
  SolveResult result = solve(reduce_with(problem, ordering), search);
  result.residual = problem.residual(result.x);
  return result;
}

}  // namespace bils
