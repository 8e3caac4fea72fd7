#include "wonham/rng.hpp"

#include <cmath>

namespace wonham {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t root, std::uint64_t cell, std::uint64_t replica,
                             Stream stream) noexcept {
  std::uint64_t h = mix64(root);
  h = mix64(h ^ cell);
  h = mix64(h ^ replica);
  h = mix64(h ^ static_cast<std::uint64_t>(stream));
  return h;
}

double RngStream::exponential(double rate) {
  if (rate <= 0.0) return INFINITY;
  return -std::log1p(-uniform()) / rate;
}

std::uint64_t RngStream::poisson(double mean) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(engine_);
}

}  // namespace wonham
