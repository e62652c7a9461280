#pragma once

#include <cstdint>

#include "rca/config.hpp"
#include "rca/permutation.hpp"

namespace rca {

/// splitmix64; fully specified so seeded runs are reproducible everywhere.
class Rng {
public:
  explicit Rng(uint64_t seed = 0) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n).
  uint64_t below(uint64_t n) {
    uint64_t threshold = -n % n;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  int range(int lo, int hi) { return lo + static_cast<int>(below(hi - lo + 1)); }

  /// Independent stream for sample index i (deterministic fan-out).
  Rng split(uint64_t i) const {
    Rng r(state_ ^ (0x5851f42d4c957f2dull * (i + 1)));
    r.next();
    return r;
  }

private:
  uint64_t state_;
};

Word random_word(Rng& rng, const Alphabet& a, int len);
SupportedConfig random_config(Rng& rng, const Alphabet& a, int min_period, int max_period,
                              int center_len);
Permutation random_permutation(Rng& rng, int n);
Permutation random_even_permutation(Rng& rng, int n);

}  // namespace rca
