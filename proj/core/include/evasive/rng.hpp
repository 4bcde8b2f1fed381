#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace evasive {

/// Deterministic random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Bounded integers use rejection sampling on the raw 64-bit
/// output (std::uniform_int_distribution is implementation-defined and is
/// never used), so a seed gives the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, n). n must be positive.
  std::uint64_t uniform(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for a named subtask:
///   splitmix64(seed ^ splitmix64(fnv1a64(label) + index))
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t index = 0) noexcept;

}  // namespace evasive
