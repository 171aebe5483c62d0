#pragma once

#include <cstdint>
#include <random>

namespace hsp {

/// SplitMix64 finalizer; maps (base seed, stream index) to a child seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Seeded generator that remembers its seed so a run can be replayed.
/// Sampling routines are implemented here rather than with <random>
/// distributions, whose output differs between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, n); n > 0.
  std::uint64_t uniform(std::uint64_t n);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Independent child stream, deterministic in (seed, stream).
  Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace hsp
