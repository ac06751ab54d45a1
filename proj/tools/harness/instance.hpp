#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bils/matrix.hpp"
#include "bils/problem.hpp"

namespace bils::harness {

/// SplitMix64: a 64-bit Weyl counter (increment 0x9E3779B97F4A7C15) passed
/// through a fixed avalanche mix. Output for a given seed is identical on
/// every platform. Normals use Box-Muller on 53-bit uniforms, one normal per
/// pair of draws.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1).
  double uniform() noexcept;
  /// Uniform on [lo, hi], unbiased by rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;
  double normal() noexcept;

 private:
  std::uint64_t state_;
};

/// The SplitMix64 output function applied to a single value.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Seed for the index-th independent stream under a suite seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Box for a coordinate with `width` integers, centred on zero:
/// lower = -(width / 2), upper = lower + width - 1.
std::int64_t box_lower_for_width(std::int64_t width) noexcept;

struct InstanceSpec {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<std::int64_t> box_widths{4};  // one entry (all coordinates) or n entries
  std::optional<double> snr_db;
  std::optional<double> noise_sigma;
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  BilsProblem problem;
  IntVector x_true;
  double noise_norm = 0.0;  // ||y - H x_true||_2
};

/// H with i.i.d. standard normal entries (row-major draw order), x_true
/// uniform over the box, y = H x_true + sigma * noise. For an SNR spec,
/// sigma^2 = ||H x_true||^2 / (m 10^(snr/10)). Throws kInvalidSpec.
GeneratedInstance generate(const InstanceSpec& spec);

void validate(const InstanceSpec& spec);

}  // namespace bils::harness
