#include "harness/instance.hpp"

#include <cmath>
#include <numbers>

#include "bils/error.hpp"

namespace bils::harness {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() noexcept {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix64(state_);
}

double SplitMix64::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::int64_t SplitMix64::uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
  const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t v = next();
  while (v >= limit) v = next();
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + v % range);
}

double SplitMix64::normal() noexcept {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed ^ mix64(index + 0x6A09E667F3BCC909ULL));
}

std::int64_t box_lower_for_width(std::int64_t width) noexcept { return -(width / 2); }

void validate(const InstanceSpec& spec) {
  if (spec.n < 1 || spec.m < spec.n) {
    throw Error(ErrorCode::kInvalidSpec, "need m >= n >= 1");
  }
  if (spec.box_widths.size() != 1 && spec.box_widths.size() != spec.n) {
    throw Error(ErrorCode::kInvalidSpec, "box widths must have 1 or n entries");
  }
  for (auto w : spec.box_widths) {
    if (w < 2) throw Error(ErrorCode::kInvalidSpec, "box width must be >= 2");
  }
  if (spec.snr_db.has_value() == spec.noise_sigma.has_value()) {
    throw Error(ErrorCode::kInvalidSpec, "set exactly one of snr and noise sigma");
  }
  if (spec.snr_db && !std::isfinite(*spec.snr_db)) {
    throw Error(ErrorCode::kInvalidSpec, "snr must be finite");
  }
  if (spec.noise_sigma && !(*spec.noise_sigma >= 0.0 && std::isfinite(*spec.noise_sigma))) {
    throw Error(ErrorCode::kInvalidSpec, "noise sigma must be finite and >= 0");
  }
}

GeneratedInstance generate(const InstanceSpec& spec) {
  validate(spec);
  const std::size_t m = spec.m;
  const std::size_t n = spec.n;
  SplitMix64 rng(spec.seed);

  std::vector<double> entries(m * n);
  for (auto& v : entries) v = rng.normal();
  Mat h(m, n, std::move(entries));

  IntVector lower(n);
  IntVector upper(n);
  IntVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = spec.box_widths.size() == 1 ? spec.box_widths[0] : spec.box_widths[i];
    lower[i] = box_lower_for_width(w);
    upper[i] = lower[i] + w - 1;
    x[i] = rng.uniform_int(lower[i], upper[i]);
  }

  Vector signal(m, 0.0);
  for (std::size_t row = 0; row < m; ++row)
    for (std::size_t j = 0; j < n; ++j) signal[row] += h(row, j) * static_cast<double>(x[j]);

  double sigma = 0.0;
  if (spec.noise_sigma) {
    sigma = *spec.noise_sigma;
  } else {
    const double power = dot(signal, signal);
    sigma = std::sqrt(power / (static_cast<double>(m) * std::pow(10.0, *spec.snr_db / 10.0)));
  }

  Vector y = signal;
  double noise_sq = 0.0;
  for (std::size_t row = 0; row < m; ++row) {
    const double e = sigma * rng.normal();
    y[row] += e;
    noise_sq += e * e;
  }

  return GeneratedInstance{BilsProblem(std::move(h), std::move(y),
                                       BoxConstraint(std::move(lower), std::move(upper))),
                           std::move(x), std::sqrt(noise_sq)};
}

}  // namespace bils::harness
