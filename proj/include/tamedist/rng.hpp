#pragma once

#include <cstdint>
#include <vector>

namespace tamedist {

// Deterministic splitmix64 generator. Used instead of <random> engines so
// that seeded runs produce byte-identical reports across standard library
// implementations.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish value in [0, n). The modulo bias is irrelevant for the small
  // n used here and keeps the sequence reproducible.
  uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }

  long pick_long(long lo, long hi) {  // inclusive range
    return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
};

}  // namespace tamedist
