#pragma once

// Deterministic seeded randomness. Uses SplitMix64 with explicit multiply-high
// range reduction so identical seeds give identical sample streams on every
// platform and standard library (std::uniform_int_distribution is not
// cross-implementation stable, so it is deliberately avoided). Generators are
// splittable: child(key) derives an independent stream, so per-trial streams
// do not depend on how much randomness earlier trials consumed.

#include <cstdint>

namespace gerbeforms {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), n >= 1; multiply-high reduction.
  std::uint64_t below(std::uint64_t n) {
    using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(next()) * n) >> 64);
  }

  // Uniform integer in [lo, hi], inclusive.
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  // Independent child stream; mixing the key through the same finalizer keeps
  // children decorrelated from each other and from the parent.
  Rng child(std::uint64_t key) const {
    Rng base(state_ ^ (key * 0xD1B54A32D192ED03ull + 0x8CB92BA72F3D8DD7ull));
    base.next();
    return base;
  }

 private:
  std::uint64_t state_;
};

}  // namespace gerbeforms
