#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace hode {

// Explicit random stream. Every sampler in the library takes one of these;
// there is no hidden global generator. Streams derived from the same (seed,
// stream_id) pair produce identical draw sequences.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(splitmix(seed)) {}

  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : gen_(splitmix(splitmix(seed) ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1)))) {}

  // Uniform draw on [0,1).
  double uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
  }

  double normal01() {
    return std::normal_distribution<double>(0.0, 1.0)(gen_);
  }

  // Gamma with shape alpha and *scale* beta (mean alpha*beta).
  double gamma(double shape, double scale) {
    return std::gamma_distribution<double>(shape, scale)(gen_);
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 gen_;
};

}  // namespace hode
