#pragma once

#include <cstdint>

namespace regsub {

// SplitMix64 (Steele/Lea/Vigna, public domain). Chosen for portability: the
// whole sequence is fixed by the 64-bit seed and uses only integer ops, so
// samples are bit-identical across platforms and compilers.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    return mix64(state);
  }

  // Uniform in [0,1), 53 random bits. Never returns 1, so "u < p" accepts
  // everything at p=1 and nothing at p=0.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Top `bits` bits of one draw, bits in [0,64].
  std::uint64_t next_bits(int bits) {
    if (bits <= 0) return 0;
    return next() >> (64 - bits);
  }
};

struct Seed {
  std::uint64_t value = 0;
};

// Stream derivation rule: derived = mix64(mix64(base + phi*(a+1)) + phi*(b+1))
// with phi = 0x9E3779B97F4A7C15. Every per-trial / per-restart stream in this
// library is derived this way, so trial t of a run is reproducible in
// isolation and independent of scheduling.
inline Seed derive_seed(Seed base, std::uint64_t a, std::uint64_t b = 0) {
  constexpr std::uint64_t phi = 0x9E3779B97F4A7C15ull;
  return Seed{mix64(mix64(base.value + phi * (a + 1)) + phi * (b + 1))};
}

}  // namespace regsub
