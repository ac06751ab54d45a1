#include "harness/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <optional>
#include <sstream>

#include "bils/error.hpp"
#include "bils/solver.hpp"
#include "harness/instance.hpp"
#include "harness/problem_io.hpp"
#include "harness/suites.hpp"

namespace bils::harness {
namespace {

struct SpecFlags {
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::int64_t box_width = 4;
  std::optional<double> snr;
  std::optional<double> sigma;
  std::uint64_t seed = 1;
};

void add_spec_flags(CLI::App* cmd, SpecFlags& flags) {
  cmd->add_option("--n", flags.n, "Number of unknowns");
  cmd->add_option("--m", flags.m, "Number of observations (default n)");
  cmd->add_option("--box-width", flags.box_width, "Integers per coordinate")
      ->capture_default_str();
  auto* snr = cmd->add_option("--snr", flags.snr, "Signal-to-noise ratio in dB");
  auto* sigma = cmd->add_option("--sigma", flags.sigma, "Noise standard deviation");
  snr->excludes(sigma);
  cmd->add_option("--seed", flags.seed, "PRNG seed")->capture_default_str();
}

InstanceSpec to_spec(const SpecFlags& flags) {
  if (!flags.n) throw Error(ErrorCode::kInvalidSpec, "--n is required");
  InstanceSpec spec;
  spec.n = *flags.n;
  spec.m = flags.m.value_or(*flags.n);
  spec.box_widths = {flags.box_width};
  spec.snr_db = flags.snr;
  spec.noise_sigma = flags.sigma;
  if (!spec.snr_db && !spec.noise_sigma) spec.snr_db = 20.0;
  spec.seed = flags.seed;
  return spec;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, fmt::format("cannot open {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kInvalidArgument, fmt::format("cannot write {}", path));
  file << text;
}

Ordering ordering_from(const std::string& name) {
  auto o = parse_ordering(name);
  if (!o) throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown algorithm {}", name));
  return *o;
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kRankDeficient:
    case ErrorCode::kSingularDiagonal:
    case ErrorCode::kRadiusTooSmall:
    case ErrorCode::kInconsistentState:
    case ErrorCode::kBudgetExceeded:
      return kExitAlgorithmic;
    default:
      return kExitUsage;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Box-constrained integer least squares: column reordering and search"};
  app.name("bils");
  app.require_subcommand(1);

  std::string out_path;
  const std::vector<std::string> algs{"natural", "ch", "sw", "new"};

  SpecFlags gen_flags;
  auto* gen = app.add_subcommand("generate", "Write a random problem as JSON");
  add_spec_flags(gen, gen_flags);
  gen->add_option("--out", out_path, "Output file (default stdout)");

  SpecFlags solve_flags;
  std::string solve_file;
  std::string solve_alg = "new";
  std::optional<double> solve_radius;
  auto* slv = app.add_subcommand("solve", "Reorder and search one problem");
  slv->add_option("--file", solve_file, "Problem JSON (otherwise generated from flags)");
  add_spec_flags(slv, solve_flags);
  slv->add_option("--alg", solve_alg, "Column ordering")
      ->check(CLI::IsMember(algs))
      ->capture_default_str();
  slv->add_option("--radius", solve_radius, "Initial squared search radius (default infinite)");
  slv->add_option("--out", out_path, "Output file (default stdout)");

  EquivConfig equiv_config;
  equiv_config.trials = 100;
  std::optional<std::size_t> equiv_n;
  std::optional<std::size_t> equiv_m;
  std::optional<std::int64_t> equiv_width;
  std::optional<double> equiv_snr;
  auto* eqv = app.add_subcommand("equiv", "Compare the permutations of ch, sw and new");
  eqv->add_option("--trials", equiv_config.trials, "Number of instances")->capture_default_str();
  eqv->add_option("--seed", equiv_config.seed, "Suite seed")->capture_default_str();
  eqv->add_option("--n", equiv_n, "Fix n (default random in [2, 12])");
  eqv->add_option("--m", equiv_m, "Fix m (default random in [n, n + 4])");
  eqv->add_option("--box-width", equiv_width, "Fix box width (default random in [2, 5])");
  eqv->add_option("--snr", equiv_snr, "Fix snr in dB (default 10 or 20)");
  eqv->add_option("--out", out_path, "Output file (default stdout)");

  BenchConfig bench_config;
  std::vector<std::string> bench_algs;
  bool no_search = false;
  bool no_timing = false;
  auto* bch = app.add_subcommand("bench", "Time and count the reorderings, write CSV");
  bch->add_option("--n", bench_config.ns, "Problem sizes")->required()->delimiter(',');
  bch->add_option("--m", bench_config.ms, "Row counts, one per n (default m = n)")
      ->delimiter(',');
  bch->add_option("--alg", bench_algs, "Orderings (default all)")
      ->check(CLI::IsMember(algs))
      ->delimiter(',');
  bch->add_option("--trials", bench_config.trials, "Instances per size")->capture_default_str();
  bch->add_option("--seed", bench_config.seed, "Suite seed")->capture_default_str();
  bch->add_option("--box-width", bench_config.box_width, "Integers per coordinate")
      ->capture_default_str();
  bch->add_option("--snr", bench_config.snr_db, "Signal-to-noise ratio in dB")
      ->capture_default_str();
  bch->add_flag("--no-search", no_search, "Skip the search; leave search columns empty");
  bch->add_flag("--no-timing", no_timing, "Write 0 for reorder_us");
  bch->add_option("--out", out_path, "Output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      emit(problem_to_json(generate(to_spec(gen_flags)).problem), out_path, out);
    } else if (slv->parsed()) {
      const BilsProblem problem = solve_file.empty() ? generate(to_spec(solve_flags)).problem
                                                     : problem_from_json(read_file(solve_file));
      const Ordering ordering = ordering_from(solve_alg);
      const ReducedProblem reduced = reduce_with(problem, ordering);
      SearchOptions search;
      if (solve_radius) search.radius = RadiusPolicy::fixed(*solve_radius);
      SolveResult result = solve(reduced, search);
      result.residual = problem.residual(result.x);
      emit(solve_result_to_json(result, ordering, reduced.perm), out_path, out);
    } else if (eqv->parsed()) {
      equiv_config.n = equiv_n;
      equiv_config.m = equiv_m;
      equiv_config.box_width = equiv_width;
      equiv_config.snr_db = equiv_snr;
      emit(equiv_report_to_json(run_equiv(equiv_config)), out_path, out);
    } else if (bch->parsed()) {
      if (!bench_algs.empty()) {
        bench_config.algorithms.clear();
        for (const auto& a : bench_algs) bench_config.algorithms.push_back(ordering_from(a));
      }
      bench_config.search = !no_search;
      bench_config.timing = !no_timing;
      emit(bench_to_csv(run_bench(bench_config)), out_path, out);
    }
  } catch (const Error& e) {
    err << "bils: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "bils: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace bils::harness
