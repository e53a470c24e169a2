#pragma once

#include <cstdint>

namespace galelab {

// SplitMix64. Chosen over std::mt19937 because the algorithm is trivially
// re-implementable from its published constants, which keeps seeded runs
// reproducible across platforms and languages (see README).
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, bound), bound >= 1; rejection sampling, no modulo bias
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  bool coin() { return (next() >> 63) != 0; }

private:
  std::uint64_t state_;
};

}  // namespace galelab
