#ifndef TOKLAB_RNG_HPP
#define TOKLAB_RNG_HPP

#include <cstdint>

namespace toklab {

// All randomness in the library flows through the generator defined here.
// Variant model files record kRngName so a saved model is only accepted by a
// build that samples identically; bump the version suffix if the mixing
// function ever changes.
inline constexpr const char* kRngName = "splitmix64-v1";

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Sebastiano Vigna's splitmix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Order-sensitive combine: mix_hash(a,b) != mix_hash(b,a).
constexpr std::uint64_t mix_hash(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ (v + kGolden + (h << 6) + (h >> 2)));
}

// Maps an already-mixed hash onto [0, n) without modulo bias. Rejected draws
// re-mix the hash, so the result is a pure function of (h, n).
constexpr std::uint64_t bounded_from_hash(std::uint64_t h, std::uint64_t n) {
  const std::uint64_t min = (0 - n) % n;  // 2^64 mod n
  while (h < min) h = splitmix64(h);
  return h % n;
}

// Sequential stream for draws that are naturally ordered (e.g. a shuffle).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform draw from [0, n), n >= 1. Rejection keeps it exactly uniform.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t min = (0 - n) % n;
    std::uint64_t r = next();
    while (r < min) r = next();
    return r % n;
  }

 private:
  std::uint64_t state_;
};

// Counter-based draw in [0, n): a pure function of the key tuple, so callers
// may evaluate keys in any order (or in parallel) and still agree with a
// sequential run.
constexpr std::uint64_t counter_uniform(std::uint64_t seed, std::uint64_t k1,
                                        std::uint64_t k2, std::uint64_t k3,
                                        std::uint64_t n) {
  std::uint64_t h = splitmix64(seed);
  h = mix_hash(h, k1);
  h = mix_hash(h, k2);
  h = mix_hash(h, k3);
  return bounded_from_hash(h, n);
}

}  // namespace toklab

#endif  // TOKLAB_RNG_HPP
