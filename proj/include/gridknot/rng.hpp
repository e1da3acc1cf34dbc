#pragma once

#include <cstdint>
#include <random>

namespace gridknot {

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d4ecb9a52fae4dULL;
  return z ^ (z >> 31);
}

/// Deterministic random stream. Wraps the fully-specified mt19937_64 engine
/// with explicit bounded/real draws so results are identical across
/// platforms and standard libraries. Sub-streams derived from the base seed
/// plus counters make parallel generation order-independent.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), engine_(mix_once(seed)) {}

  uint64_t seed() const { return seed_; }

  uint64_t next() { return engine_(); }

  /// Uniform in [0, n), unbiased via rejection.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  /// Uniform in [0, 1) with 53-bit resolution.
  double real01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform_real(double lo, double hi) { return lo + (hi - lo) * real01(); }

  /// Independent stream addressed by counters, e.g. (batch, sample).
  Rng derive(uint64_t a, uint64_t b = 0, uint64_t c = 0) const {
    uint64_t s = seed_;
    uint64_t h = splitmix64(s);
    s ^= a + 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64(s);
    s ^= b + 0xb5297a4d3a2dd813ULL;
    h ^= splitmix64(s);
    s ^= c + 0x68e31da4a1ce8497ULL;
    h ^= splitmix64(s);
    return Rng(h);
  }

 private:
  static uint64_t mix_once(uint64_t seed) {
    uint64_t s = seed;
    return splitmix64(s);
  }

  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace gridknot
