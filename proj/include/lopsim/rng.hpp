#pragma once

#include <cstdint>

namespace lopsim {

// Deterministic counter-based generator. Output i of stream s under seed k is
//
//   mix(key + i * GOLDEN),   key = mix(k ^ mix(s ^ SALT))
//
// where mix is the SplitMix64 finalizer. The same (seed, stream, counter)
// triple yields the same word on every platform, there is no hidden global
// state, and independent streams can be assigned per Monte Carlo frame so a
// frame range sampled in any partition produces identical tallies.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  // Uniform double in [0, 1), 53 significant bits.
  double uniform();

  // Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Uniform double in [0, 2*pi).
  double angle();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Exact Poisson sampler (Knuth's product-of-uniforms method), evaluated in
// chunks of mean <= 25 so the e^{-mean} threshold never underflows. A mean of
// exactly zero consumes no randomness and returns 0.
std::uint64_t sample_poisson(double mean, CounterRng& rng);

}  // namespace lopsim
