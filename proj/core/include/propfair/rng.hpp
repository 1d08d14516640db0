#pragma once

#include <cstdint>

namespace propfair {

// SplitMix64 finalizer. Full-avalanche 64-bit mixer; passes the usual
// statistical batteries when used as a counter generator.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Keyed counter words: the output depends only on the key tuple, never on
// evaluation order, so keyed draws can be computed in any order or in
// parallel and still agree bit for bit.
constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a) ^ b);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(mix64(mix64(a) ^ b) ^ c);
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

// Small sequential stream for test data generation.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return mix64(state_++); }

  double next_unit() { return to_unit(next()); }

  // Unbiased enough for test generation (modulo bias < 2^-40 for small bounds).
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace propfair
