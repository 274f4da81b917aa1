#include "lopsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace lopsim {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
// Fractional bits of sqrt(2); decorrelates the stream hash from the seed hash.
constexpr std::uint64_t kStreamSalt = 0x6A09E667F3BCC909ull;

// SplitMix64 finalizer.
constexpr std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix(seed ^ mix(stream ^ kStreamSalt))) {}

std::uint64_t CounterRng::next_u64() { return mix(key_ + (++counter_) * kGolden); }

double CounterRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("below: n must be positive");
  // Multiply-shift reduction; bias is O(n / 2^64), immaterial here.
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

double CounterRng::angle() { return uniform() * 6.283185307179586476925286766559; }

std::uint64_t sample_poisson(double mean, CounterRng& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("sample_poisson: mean must be finite and nonnegative");
  if (mean == 0.0) return 0;

  std::uint64_t count = 0;
  double remaining = mean;
  while (remaining > 0.0) {
    const double chunk = remaining > 25.0 ? 25.0 : remaining;
    remaining -= chunk;
    const double limit = std::exp(-chunk);
    double product = 1.0;
    while (true) {
      product *= rng.uniform();
      if (product <= limit) break;
      ++count;
    }
  }
  return count;
}

}  // namespace lopsim
