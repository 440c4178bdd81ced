#pragma once

#include <cstdint>

namespace relcomm {

// Deterministic 64-bit generator (splitmix64). The standard <random>
// distributions are implementation-defined, so seeded experiments use this
// instead to keep outputs byte-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Rejection sampling, unbiased.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = ~0ULL - ~0ULL % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  bool chance(std::uint64_t numer, std::uint64_t denom) { return below(denom) < numer; }

  // Independent child stream; used to give each trial its own generator so
  // trials can run in any order (or in parallel) with identical results.
  Rng fork(std::uint64_t stream) const {
    Rng mix(state_ ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL));
    return Rng(mix.next());
  }

 private:
  std::uint64_t state_;
};

}  // namespace relcomm
