#pragma once

#include <cstdint>
#include <random>

namespace beamtrain {

/// SplitMix64 finaliser; used to derive independent stream seeds from counters.
std::uint64_t mix64(std::uint64_t x);

/// Seed for stream `index` under `key`. Pure function of its arguments.
std::uint64_t derive_seed(std::uint64_t key, std::uint64_t index);

/// Random stream owned by a single trial.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }

  /// Uniform integer in [0, n). n >= 1.
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  /// Uniform real in [lo, hi).
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace beamtrain
