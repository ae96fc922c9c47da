#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace bosonic {

/// One SplitMix64 step.
std::uint64_t splitmix64(std::uint64_t& state);

/// Mixes a master seed with stream tags into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags);

/// mt19937_64 with platform-independent conversions to doubles.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Standard normal by Box-Muller.
  double normal();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bosonic
