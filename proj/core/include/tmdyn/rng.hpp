#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace tmdyn {

/// splitmix64; used to expand a single 64-bit seed into generator state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

/// xoshiro256** (Blackman & Vigna). 2^256 - 1 period with a 2^128 jump, so
/// independent streams can be carved out of one seed. Models
/// UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Advances the state by 2^128 draws.
  void jump();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  const std::array<std::uint64_t, 4>& state() const { return s_; }

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// Standard normal draws via the Box-Muller transform. Both variates of each
/// pair are used; the cached second one is part of the sampler state, so the
/// stream is bit-reproducible for a given generator seed.
class NormalSampler {
 public:
  double operator()(Xoshiro256& rng);
  void reset() { has_spare_ = false; }

 private:
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Mixes a base seed with integer coordinates into a new 64-bit seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

}  // namespace tmdyn
