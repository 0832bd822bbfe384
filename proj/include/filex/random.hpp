#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace filex {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for one run of a sweep: chained SplitMix64 over
/// (master_seed, sweep_index, replicate). Fixed forever; changing it changes
/// every published CSV.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed,
                                    std::uint64_t sweep_index,
                                    std::uint64_t replicate) noexcept {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ sweep_index);
  h = mix64(h ^ (replicate + 0x632be59bd9b4e019ULL));
  return h;
}

/// Deterministic random source for a single run.
///
/// Backed by std::mt19937_64 seeded with the 64-bit seed directly. Uniform
/// variates take the top 53 bits of one engine output, so the uniform
/// sequence is reproducible across compilers. Binomial variates go through
/// std::binomial_distribution and are only reproducible within one build
/// of the standard library.
///
/// Satisfies UniformRandomBitGenerator so it can drive <random> directly.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Binomial(trials, p). p is clamped to [0, 1].
  std::uint64_t binomial(std::uint64_t trials, double p) {
    if (trials == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    std::binomial_distribution<std::int64_t> dist(
        static_cast<std::int64_t>(trials), p);
    return static_cast<std::uint64_t>(dist(engine_));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace filex
