#pragma once

#include <cstdint>

namespace qksys {

// SplitMix64 (Steele, Lea, Flood 2014). One fixed generator used everywhere
// so that every seeded run is bit-identical across platforms and compilers;
// std::uniform_int_distribution is deliberately avoided because its output
// is not specified bit-exactly. Sub-component streams are derived by adding
// small fixed offsets to the seed; SplitMix64 decorrelates adjacent seeds.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased integer in [0, n) by rejection; n must be >= 1.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Dyadic rational in [0, 1) built from the top 53 bits; exact in a double.
  double unit_real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return unit_real() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace qksys
