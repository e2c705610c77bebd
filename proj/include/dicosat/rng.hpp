#pragma once

#include <cstdint>
#include <initializer_list>

namespace dicosat {

// splitmix64/v1: Vigna's SplitMix64, a counter-based 64-bit generator.
// Every randomized code path in this project derives its stream from an
// explicit seed, and all draws go through the integer helpers below so the
// produced streams are bit-identical across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, bound), bound > 0
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // uniform in [0, 1) with 53 random bits
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

 private:
  std::uint64_t state_;
};

inline constexpr char kRngName[] = "splitmix64/v1";

inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic sub-stream seed from a master seed and a coordinate tuple.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> coords) {
  std::uint64_t s = mix64(master ^ 0x9e3779b97f4a7c15ULL);
  for (std::uint64_t c : coords) s = mix64(s ^ (c + 0x9e3779b97f4a7c15ULL));
  return s;
}

}  // namespace dicosat
