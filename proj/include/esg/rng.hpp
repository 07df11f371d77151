#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace esg {

// splitmix64 finalizer; spreads low-entropy seeds across the full word.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ (mix64(b) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

// Derives the seed for one stream (e.g. one environment instance within one
// training iteration) from the run seed. Streams never share an engine, so
// parallel rollouts are reproducible regardless of thread count.
inline std::uint64_t stream_seed(std::uint64_t run_seed, std::uint64_t iteration,
                                 std::uint64_t stream) {
  return hash_combine(hash_combine(run_seed, iteration), stream);
}

// RNG owned by exactly one environment or driver. The engine is
// std::mt19937_64; uniform/normal transforms are done here so the produced
// doubles do not depend on libstdc++ distribution internals.
class Rng {
 public:
  Rng() : engine_(mix64(0)) {}
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  void seed(std::uint64_t s) {
    engine_.seed(mix64(s));
    have_spare_ = false;
  }

  std::uint64_t bits() { return engine_(); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(bits() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace esg
