#pragma once

#include <cstdint>
#include <vector>

namespace urlsift {

// SplitMix64 (Steele, Lea & Flood; Vigna's public-domain reference).
// Chosen over std::mt19937 + <random> distributions because the standard
// distributions are not bit-reproducible across library implementations;
// this generator is pure integer arithmetic and identical everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Unbiased integer in [0, n). n must be > 0.
  uint64_t bounded(uint64_t n) {
    const uint64_t limit = n * (UINT64_MAX / n);
    uint64_t r = next();
    while (r >= limit) r = next();
    return r % n;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

// Stable per-stream seed derivation (master seed, stream index) -> seed.
// Used for per-tree and per-URL streams so parallel order cannot matter.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
  uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace urlsift
