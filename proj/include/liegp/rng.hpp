#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace liegp {

// Deterministic random stream.
//
// All stochastic code in this library draws through this wrapper so that a
// fixed seed reproduces bit-identical results on any platform: the raw
// generator is std::mt19937_64 (whose output sequence is specified by the
// standard), and the uniform/normal transforms below are written out
// explicitly instead of relying on std::*_distribution, whose algorithms
// are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Raw 64 uniform bits.
  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    // Rejection sampling for exact uniformity.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Standard normal via Box-Muller (explicit so streams are portable).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    // u1 in (0,1] so that log(u1) is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  // Independent child stream identified by `tag`.
  //
  // The child seed is derived from the parent's *seed* (not its current
  // state), so forks are reproducible regardless of how many draws were made
  // in between; distinct tags give statistically independent streams.
  Rng fork(std::uint64_t tag) const {
    return Rng(mix(seed_ ^ mix(tag + 0x9e3779b97f4a7c15ULL)));
  }

 private:
  // splitmix64 finalizer: a well-mixed 64-bit permutation.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace liegp
