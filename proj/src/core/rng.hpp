#pragma once

#include <cmath>
#include <cstdint>

namespace omni {

// Portable deterministic generator built on splitmix64. Every random draw in
// the project goes through this class so that sequences, perturbations and
// golden traces regenerate bit-identically from a seed. Floating-point
// conversion uses the upper 53 bits; normal deviates use an Irwin-Hall sum
// (12 uniforms minus 6), which needs no transcendental calls.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Independent substream: one extra splitmix step folds the stream id into
  // the seed, so streams never overlap for distinct ids.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    Rng mixer(seed ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1)));
    return Rng(mixer.next_u64());
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Integer in [0, n). n must be > 0.
  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

  // Standard normal via Irwin-Hall: exact zero mean / unit variance and
  // platform independent (pure IEEE additions).
  double normal() {
    double s = 0.0;
    for (int i = 0; i < 12; ++i) s += uniform();
    return s - 6.0;
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  // Knuth multiplication method; adequate for the small rates used here.
  int poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    const double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

 private:
  std::uint64_t state_;
};

}  // namespace omni
