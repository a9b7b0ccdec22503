#ifndef SMATCH_RNG_HPP
#define SMATCH_RNG_HPP

#include <cstdint>

namespace smatch {

// SplitMix64 (Steele, Lea & Flood / Vigna).  Counter-based: the i-th output
// is a fixed finalizer applied to seed + i*gamma, so streams keyed by
// (seed, run_index) are independent and order-insensitive.  Output is
// platform-independent, which keeps simulations reproducible bit for bit.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased uniform draw from [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound < 2) return 0;
    const std::uint64_t threshold = -bound % bound; // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // UniformRandomBitGenerator interface
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type(0); }
  result_type operator()() { return next(); }

private:
  std::uint64_t state_;
};

// Collapses (seed, stream) into one 64-bit seed with the SplitMix64 finalizer
// so that nearby stream indices give unrelated states.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 g(seed ^ (stream * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
  g.next();
  return g.next();
}

} // namespace smatch

#endif
