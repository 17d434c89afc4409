#pragma once

#include <cstdint>

namespace nlscat {

// Small deterministic generator (splitmix64).  Used instead of <random>
// distributions so that seeded runs produce identical streams on every
// platform and standard library.
struct SplitMix64 {
  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  uint64_t state;
};

}  // namespace nlscat
