#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bils/reorder.hpp"
#include "bils/solver.hpp"
#include "harness/instance.hpp"

namespace bils::harness {

// ---- equivalence audit -----------------------------------------------------

/// Unset dimensions are drawn per trial: n in [2, 12], m in [n, n + 4],
/// box width in [2, 5], snr in {10, 20} dB.
struct EquivConfig {
  std::size_t trials = 0;
  std::uint64_t seed = 1;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::optional<std::int64_t> box_width;
  std::optional<double> snr_db;
};

/// First disagreement between reorder_ch (A) and another algorithm (B).
struct EquivMismatch {
  std::size_t trial = 0;
  std::uint64_t seed = 0;       // InstanceSpec seed of the trial
  std::string against;          // "sw" or "new"
  std::size_t step = 0;         // k: number of unplaced columns at the split
  std::size_t index_a = 0;      // original column chosen by ch
  std::size_t index_b = 0;      // original column chosen by the other algorithm
  double rel_gap = 0.0;         // |dist_a - dist_b| / max(dist_a, dist_b), from ch's scores
};

struct EquivReport {
  std::size_t trials = 0;
  std::size_t matches = 0;
  std::vector<EquivMismatch> mismatches;
};

/// The InstanceSpec for one trial of an equivalence suite.
InstanceSpec equiv_instance_spec(const EquivConfig& config, std::size_t trial);

EquivReport run_equiv(const EquivConfig& config);

/// {"trials", "matches", "mismatches": [{"trial", "seed", "against", "step",
///  "indexA", "indexB", "relGap"}]}
std::string equiv_report_to_json(const EquivReport& report);

/// Compares two traces of the same problem; nullopt when the chosen columns
/// agree at every step.
std::optional<EquivMismatch> first_divergence(const ReorderTrace& a, const ReorderTrace& b);

// ---- benchmark -------------------------------------------------------------

struct BenchConfig {
  std::vector<std::size_t> ns;
  std::vector<std::size_t> ms;  // empty: m = n; otherwise same length as ns
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  std::int64_t box_width = 4;
  double snr_db = 20.0;
  bool search = true;
  bool timing = true;  // false writes 0 for reorder_us so output is reproducible
  std::vector<Ordering> algorithms{Ordering::kNatural, Ordering::kCh, Ordering::kSw,
                                   Ordering::kNew};
};

struct BenchRecord {
  std::uint64_t seed = 0;
  Ordering alg = Ordering::kNatural;
  std::size_t n = 0;
  std::size_t m = 0;
  double reorder_us = 0.0;
  std::uint64_t reorder_flops = 0;
  std::uint64_t search_nodes = 0;
  double residual = 0.0;
  std::uint64_t solution_hash = 0;  // FNV-1a over x
  bool searched = false;
};

std::vector<BenchRecord> run_bench(const BenchConfig& config);

inline constexpr const char* kBenchCsvHeader =
    "seed,alg,n,m,reorder_us,reorder_flops,search_nodes,residual";

/// One row per record, then one "mean" row per (n, m, alg). Search columns
/// are left empty for records that were not searched.
std::string bench_to_csv(const std::vector<BenchRecord>& records);

std::uint64_t solution_hash(std::span<const std::int64_t> x) noexcept;

}  // namespace bils::harness
