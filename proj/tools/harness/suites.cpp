#include "harness/suites.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <tuple>

#include "bils/error.hpp"
#include "bils/search.hpp"
#include "harness/problem_io.hpp"

namespace bils::harness {

InstanceSpec equiv_instance_spec(const EquivConfig& config, std::size_t trial) {
  SplitMix64 draw(derive_seed(config.seed, trial));
  InstanceSpec spec;
  spec.n = config.n.value_or(static_cast<std::size_t>(draw.uniform_int(2, 12)));
  spec.m = config.m.value_or(spec.n + static_cast<std::size_t>(draw.uniform_int(0, 4)));
  spec.box_widths = {config.box_width.value_or(draw.uniform_int(2, 5))};
  spec.snr_db = config.snr_db.value_or(draw.uniform_int(0, 1) == 0 ? 10.0 : 20.0);
  spec.seed = draw.next();
  return spec;
}

std::optional<EquivMismatch> first_divergence(const ReorderTrace& a, const ReorderTrace& b) {
  const std::size_t steps = std::min(a.steps.size(), b.steps.size());
  for (std::size_t s = 0; s < steps; ++s) {
    const auto& sa = a.steps[s];
    const auto& sb = b.steps[s];
    const auto& chosen_a = sa.candidates[sa.chosen];
    const auto& chosen_b = sb.candidates[sb.chosen];
    if (chosen_a.index == chosen_b.index) continue;

    EquivMismatch mm;
    mm.step = sa.active;
    mm.index_a = chosen_a.index;
    mm.index_b = chosen_b.index;
    // Both traces score the same subproblem up to here, so compare within a.
    double dist_b = chosen_b.dist;
    for (const auto& c : sa.candidates) {
      if (c.index == chosen_b.index) dist_b = c.dist;
    }
    const double top = std::max(chosen_a.dist, dist_b);
    mm.rel_gap = top > 0.0 ? std::abs(chosen_a.dist - dist_b) / top : 0.0;
    return mm;
  }
  return std::nullopt;
}

EquivReport run_equiv(const EquivConfig& config) {
  EquivReport report;
  report.trials = config.trials;
  for (std::size_t t = 0; t < config.trials; ++t) {
    const InstanceSpec spec = equiv_instance_spec(config, t);
    const auto instance = generate(spec);

    ReorderTrace ch_trace;
    ReorderTrace sw_trace;
    ReorderTrace new_trace;
    ReorderOptions opts;
    opts.trace = &ch_trace;
    const auto ch = reorder_ch(instance.problem, opts);
    opts.trace = &sw_trace;
    const auto sw = reorder_sw(instance.problem, opts);
    opts.trace = &new_trace;
    const auto nw = reorder_new(instance.problem, opts);

    std::optional<EquivMismatch> mismatch;
    if (ch.perm != sw.perm) {
      mismatch = first_divergence(ch_trace, sw_trace);
      if (mismatch) mismatch->against = "sw";
    }
    if (!mismatch && ch.perm != nw.perm) {
      mismatch = first_divergence(ch_trace, new_trace);
      if (mismatch) mismatch->against = "new";
    }
    if (!mismatch && (ch.perm != sw.perm || ch.perm != nw.perm)) {
      // Unreachable when the traces are consistent with the permutations.
      throw Error(ErrorCode::kInconsistentState, "permutations differ but traces agree");
    }
    if (mismatch) {
      mismatch->trial = t;
      mismatch->seed = spec.seed;
      report.mismatches.push_back(*mismatch);
    } else {
      ++report.matches;
    }
  }
  return report;
}

std::string equiv_report_to_json(const EquivReport& report) {
  std::string items;
  for (const auto& mm : report.mismatches) {
    if (!items.empty()) items += ',';
    items += fmt::format(
        R"({{"trial":{},"seed":{},"against":"{}","step":{},"indexA":{},"indexB":{},"relGap":{}}})",
        mm.trial, mm.seed, mm.against, mm.step, mm.index_a, mm.index_b, format_real(mm.rel_gap));
  }
  return fmt::format(R"({{"trials":{},"matches":{},"mismatches":[{}]}})", report.trials,
                     report.matches, items) +
         "\n";
}

std::uint64_t solution_hash(std::span<const std::int64_t> x) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::int64_t v : x) {
    auto u = static_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= (u >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  if (!config.ms.empty() && config.ms.size() != config.ns.size()) {
    throw Error(ErrorCode::kInvalidSpec, "m list must match n list");
  }
  std::vector<BenchRecord> records;
  for (std::size_t d = 0; d < config.ns.size(); ++d) {
    const std::size_t n = config.ns[d];
    const std::size_t m = config.ms.empty() ? n : config.ms[d];
    for (std::size_t t = 0; t < config.trials; ++t) {
      InstanceSpec spec;
      spec.n = n;
      spec.m = m;
      spec.box_widths = {config.box_width};
      spec.snr_db = config.snr_db;
      spec.seed = derive_seed(derive_seed(config.seed, d), t);
      const auto instance = generate(spec);

      for (Ordering alg : config.algorithms) {
        BenchRecord rec;
        rec.seed = spec.seed;
        rec.alg = alg;
        rec.n = n;
        rec.m = m;
        FlopCounter flops;
        ReorderOptions opts;
        opts.flops = &flops;
        const auto start = std::chrono::steady_clock::now();
        const auto reduced = reduce_with(instance.problem, alg, opts);
        const auto stop = std::chrono::steady_clock::now();
        rec.reorder_flops = flops.units;
        if (config.timing) {
          rec.reorder_us = std::chrono::duration<double, std::micro>(stop - start).count();
        }
        if (config.search) {
          const auto result = solve(reduced);
          rec.search_nodes = result.stats.total_nodes();
          rec.residual = instance.problem.residual(result.x);
          rec.solution_hash = solution_hash(result.x);
          rec.searched = true;
        }
        records.push_back(rec);
      }
    }
  }
  return records;
}

std::string bench_to_csv(const std::vector<BenchRecord>& records) {
  std::string out = std::string(kBenchCsvHeader) + "\n";
  const auto search_cols = [](bool searched, const std::string& nodes,
                              const std::string& residual) {
    return searched ? nodes + "," + residual : std::string(",");
  };
  for (const auto& r : records) {
    out += fmt::format("{},{},{},{},{:.3f},{},{}\n", r.seed, to_string(r.alg), r.n, r.m,
                       r.reorder_us, r.reorder_flops,
                       search_cols(r.searched, fmt::format("{}", r.search_nodes),
                                   format_real(r.residual)));
  }

  struct Sum {
    std::size_t count = 0;
    double us = 0.0;
    double flops = 0.0;
    double nodes = 0.0;
    double residual = 0.0;
    bool searched = true;
  };
  // Keyed by first appearance so the summary order follows the input order.
  std::vector<std::tuple<std::size_t, std::size_t, Ordering>> keys;
  std::map<std::tuple<std::size_t, std::size_t, Ordering>, Sum> sums;
  for (const auto& r : records) {
    const auto key = std::make_tuple(r.n, r.m, r.alg);
    if (!sums.contains(key)) keys.push_back(key);
    auto& s = sums[key];
    ++s.count;
    s.us += r.reorder_us;
    s.flops += static_cast<double>(r.reorder_flops);
    s.nodes += static_cast<double>(r.search_nodes);
    s.residual += r.residual;
    s.searched = s.searched && r.searched;
  }
  for (const auto& key : keys) {
    const auto& s = sums[key];
    const double c = static_cast<double>(s.count);
    out += fmt::format("mean,{},{},{},{:.3f},{},{}\n", to_string(std::get<2>(key)),
                       std::get<0>(key), std::get<1>(key), s.us / c, format_real(s.flops / c),
                       search_cols(s.searched, format_real(s.nodes / c),
                                   format_real(s.residual / c)));
  }
  return out;
}

}  // namespace bils::harness
