#pragma once

#include <cstdint>
#include <random>

namespace cburr {

/// Seedable random stream. Streams built from the same seed but different
/// stream indices are statistically independent, which lets bootstrap
/// replicates and multi-start branches draw without sharing state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Poisson count with the given mean (mean >= 0).
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace cburr
