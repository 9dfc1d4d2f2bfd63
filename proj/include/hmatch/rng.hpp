#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hmatch {

// Seedable RNG with explicit stream splitting: stream t of a master seed is
// an independent-for-practical-purposes generator, so parallel trials stay
// reproducible regardless of scheduling. Trial t of an experiment uses
// SplitRng(master_seed, t).
//
// All sampling helpers are implemented on top of raw 64-bit draws (mt19937_64
// output is fully specified by the standard), so results are identical across
// platforms; std::*_distribution is avoided on purpose.
class SplitRng {
 public:
  SplitRng(std::uint64_t master_seed, std::uint64_t stream) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(master_seed),
        static_cast<std::uint32_t>(master_seed >> 32),
        static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32),
    };
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, n) by rejection; n = 0 yields 0.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

  int uniform_int(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(uniform_below(
                    static_cast<std::uint64_t>(hi) - lo + 1));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Box-Muller; two uniforms per draw, no cached spare.
  double normal(double mean, double stddev) {
    double u1 = 1.0 - uniform01();  // (0, 1], keeps log() finite
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(6.283185307179586477 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hmatch
