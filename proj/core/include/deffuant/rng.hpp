#ifndef DEFFUANT_RNG_HPP
#define DEFFUANT_RNG_HPP

#include <cstdint>
#include <random>

namespace deffuant
{

/**
 * Seedable random source used by every sampler and engine.
 *
 * Wraps std::mt19937_64 (fully specified by the standard) and performs its own
 * integer-to-real conversions so that streams are reproducible across standard
 * library implementations. Independent replicate streams are derived from a
 * (master seed, stream index) pair with `Rng::stream`.
 */
class Rng
{
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  /// Generator for replicate `index` of an experiment seeded with `master_seed`.
  static Rng stream(std::uint64_t master_seed, std::uint64_t index);

  /// Seed value identifying stream `index`; printed in per-run reports.
  static std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform on {0, ..., n - 1}; n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Exponential with the given rate (mean 1 / rate).
  double exponential(double rate);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

} // namespace deffuant

#endif
