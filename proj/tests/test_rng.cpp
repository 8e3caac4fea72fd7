#include <doctest.h>

#include <cmath>
#include <set>

#include "wonham/rng.hpp"

using namespace wonham;

TEST_CASE("substream seeds depend on every key word") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t root : {1ULL, 2ULL})
    for (std::uint64_t cell = 0; cell < 4; ++cell)
      for (std::uint64_t rep = 0; rep < 50; ++rep)
        for (Stream s : {Stream::chain, Stream::brownian, Stream::spikes, Stream::auxiliary})
          seen.insert(substream_seed(root, cell, rep, s));
  CHECK(seen.size() == 2 * 4 * 50 * 4);
  // swapping cell and replica must not collide
  CHECK(substream_seed(1, 2, 3, Stream::chain) != substream_seed(1, 3, 2, Stream::chain));
}

TEST_CASE("a substream replays identically") {
  RngStream a = substream(9, 1, 2, Stream::brownian);
  RngStream b = substream(9, 1, 2, Stream::brownian);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(a.uniform() == b.uniform());
    REQUIRE(a.normal() == b.normal());
  }
}

TEST_CASE("uniform lies in [0,1) and has the right mean and variance") {
  RngStream r(123);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    s += u;
    s2 += u * u;
  }
  const double mean = s / n;
  CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(s2 / n - mean * mean - 1.0 / 12.0) < 2e-3);
}

TEST_CASE("exponential variates match mean 1/rate") {
  RngStream r(5);
  const int n = 200000;
  const double rate = 0.52;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = r.exponential(rate);
    REQUIRE(e >= 0.0);
    s += e;
  }
  CHECK(std::abs(s / n - 1.0 / rate) < 4.0 * (1.0 / rate) / std::sqrt(n));
  CHECK(std::isinf(r.exponential(0.0)));
}

TEST_CASE("poisson mean") {
  RngStream r(77);
  const int n = 100000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += static_cast<double>(r.poisson(5.2));
  CHECK(std::abs(s / n - 5.2) < 4.0 * std::sqrt(5.2 / n));
  CHECK(r.poisson(0.0) == 0);
}
