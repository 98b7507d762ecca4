#pragma once

#include <cstdint>

#include "framemap/error.hpp"

namespace framemap {

// splitmix64: tiny, fast, and produces the same stream on every platform,
// which std::mt19937 + std::uniform_int_distribution do not guarantee.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Rejection sampling, no modulo bias.
  uint64_t next_below(uint64_t n) {
    if (n == 0) fail(ErrorKind::Argument, "next_below: n must be positive");
    const uint64_t reject = (0 - n) % n;  // 2^64 mod n
    uint64_t r = next_u64();
    while (r < reject) r = next_u64();
    return r % n;
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

inline uint64_t splitmix64_once(uint64_t x) {
  Rng r(x);
  return r.next_u64();
}

}  // namespace framemap
