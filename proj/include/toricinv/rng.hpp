#pragma once

// Deterministic splitmix64 generator. All randomized procedures in the
// library derive their streams from a user-visible seed so reports are
// reproducible byte for byte.

#include <cstdint>

namespace toricinv {

struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [lo, hi].
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }

  /// Nonzero integer with |v| <= bound.
  long nonzero(long bound) {
    long v = range(1, bound);
    return (next() & 1) ? v : -v;
  }
};

/// Stream derivation: mixes a seed with stream indices so independent
/// sub-procedures (per face, per trial) get decorrelated deterministic
/// generators.
inline uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b = 0,
                            uint64_t c = 0) {
  SplitMix64 g(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^
               (b * 0xc2b2ae3d27d4eb4fULL) ^ (c * 0x165667b19e3779f9ULL));
  g.next();
  return g.next();
}

}  // namespace toricinv
