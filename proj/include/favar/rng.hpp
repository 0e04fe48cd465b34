#pragma once

#include <cstdint>
#include <string>

namespace favar {

// Deterministic pseudo-random generator with named substreams.
//
// std::mt19937 leaves the distribution algorithms implementation-defined,
// so the normal/gamma transforms here are written out explicitly to make
// sampled values reproducible across compilers and platforms.  The core
// is xoshiro256++ seeded through splitmix64; substreams are derived by
// hashing a label into the seed so that independent components (data
// generation, posterior sampling, network init, ...) never share state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Derives an independent generator for a named component.
  Rng substream(const std::string& label) const;
  // Derives a per-replication generator (rep index folded into the seed).
  Rng replication(std::uint64_t rep) const;

  std::uint64_t next_u64();
  // Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  // Standard normal via Box-Muller (both values used).
  double normal();
  double normal(double mean, double sd);
  // Gamma(shape, scale) via Marsaglia-Tsang squeeze, boosted for shape < 1.
  double gamma(double shape, double scale);
  // Inverse-gamma with shape e and rate d: density proportional to
  // x^{-e-1} exp(-d/x).
  double inverse_gamma(double shape, double rate);
  // Integer uniform on [0, n).
  std::uint64_t index(std::uint64_t n);

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t s_[4] = {0, 0, 0, 0};
  bool have_spare_ = false;
  double spare_ = 0.0;

  void reseed(std::uint64_t seed);
};

}  // namespace favar
