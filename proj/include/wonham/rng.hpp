#pragma once

#include <cstdint>
#include <random>

namespace wonham {

/// Independent random streams attached to one replica.
enum class Stream : std::uint64_t {
  chain = 1,     // jump times of the hidden chain
  brownian = 2,  // observation noise
  spikes = 3,    // limiting spike process sampler
  auxiliary = 4,
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the substream (cell, replica, stream) under `root`.
///
/// The seed is a chained SplitMix64 hash of the four words, so any two
/// distinct keys give unrelated engines and a replica's draws do not depend
/// on which worker runs it or in which order.
std::uint64_t substream_seed(std::uint64_t root, std::uint64_t cell, std::uint64_t replica,
                             Stream stream) noexcept;

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0,1).
  double uniform() { return std::generate_canonical<double, 53>(engine_); }

  double normal() { return normal_(engine_); }

  /// Exponential variate by inverse CDF.
  double exponential(double rate);

  std::uint64_t poisson(double mean);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline RngStream substream(std::uint64_t root, std::uint64_t cell, std::uint64_t replica,
                           Stream stream) {
  return RngStream(substream_seed(root, cell, replica, stream));
}

}  // namespace wonham
