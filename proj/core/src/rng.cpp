#include "deffuant/rng.hpp"

#include <cmath>
#include <limits>

namespace deffuant
{

namespace
{

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  engine_.seed(seq);
}

std::uint64_t Rng::stream_seed(std::uint64_t master_seed, std::uint64_t index)
{
  return mix(mix(master_seed) ^ mix(index + 0x632be59bd9b4e019ULL));
}

Rng Rng::stream(std::uint64_t master_seed, std::uint64_t index)
{
  return Rng(stream_seed(master_seed, index));
}

double Rng::uniform01()
{
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_index(std::uint64_t n)
{
  // Rejection on the top of the range removes modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = engine_();
  while (x >= limit) {
    x = engine_();
  }
  return x % n;
}

double Rng::exponential(double rate)
{
  return -std::log1p(-uniform01()) / rate;
}

} // namespace deffuant
