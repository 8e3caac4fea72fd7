#include <doctest.h>

#include "support.hpp"
#include "wonham/metrics.hpp"
#include "wonham/spike_model.hpp"

using namespace wonham;
using doctest::Approx;

namespace {

const ModelParams kModel{1.3, 0.4, 1e4};

SpikeSet draw(const JumpPath& base, double eps, std::uint64_t r, std::uint64_t cell = 41) {
  RngStream rng = substream(5, cell, r, Stream::spikes);
  return sample_spike_process(base, eps, kModel, rng);
}

}  // namespace

TEST_CASE("x = 0 on [0, 10], eps = 0.5: mean spike count 5.2") {
  const JumpPath base = constant_path(0, 10.0);
  const int n = 1000;
  double s = 0.0;
  for (int r = 0; r < n; ++r) s += static_cast<double>(draw(base, 0.5, static_cast<std::uint64_t>(r)).spikes().size());
  CHECK(s / n == Approx(5.2).epsilon(0.2 / 5.2));
}

TEST_CASE("eps close to 1 leaves no spikes") {
  const JumpPath base(0, {3.0, 6.0}, 10.0);
  for (std::uint64_t r = 0; r < 200; ++r) CHECK(draw(base, 1.0 - 1e-12, r).spikes().empty());
}

TEST_CASE("spikes sit inside constancy windows with the matching side") {
  const JumpPath base(0, {2.0, 5.5, 7.0}, 10.0);
  std::size_t from0 = 0, from1 = 0;
  for (std::uint64_t r = 0; r < 300; ++r) {
    const SpikeSet set = draw(base, 0.2, r);
    for (const Spike& sp : set.spikes()) {
      CHECK((sp.side == SpikeSide::from0) == (state_at(base, sp.t) == 0));
      CHECK(sp.m > 0.2);
      CHECK(sp.m <= 1.0);
      (sp.side == SpikeSide::from0 ? from0 : from1) += 1;
    }
  }
  // time in 0: 2 + 1.5 = 3.5 at weight p; time in 1: 3.5 + 3 = 6.5 at weight 1 - p
  const double mass = 300 * kModel.lambda * (1.0 / 0.2 - 1.0);
  CHECK(std::abs(static_cast<double>(from0) - mass * 0.4 * 3.5) < 4.0 * std::sqrt(mass * 0.4 * 3.5));
  CHECK(std::abs(static_cast<double>(from1) - mass * 0.6 * 6.5) < 4.0 * std::sqrt(mass * 0.6 * 6.5));
}

TEST_CASE("max spike: examples and closed-form CDF") {
  const JumpPath base(0, {1.5}, 3.0);
  CHECK(max_spike(SpikeSet(base, {}, 0.1)) == 0.0);
  CHECK(max_spike(SpikeSet(base, {{1.0, 0.4, SpikeSide::from0}, {2.0, 0.7, SpikeSide::from1}}, 0.1)) == 0.7);

  const JumpPath zero = constant_path(0, 10.0);
  const double eta = 0.3;
  const double cdf = max_spike_cdf(zero, eta, kModel);
  CHECK(cdf == Approx(std::exp(-kModel.lambda * eta / (1.0 - eta) * kModel.p * 10.0)));
  const int n = 10000;
  int below = 0;
  for (int r = 0; r < n; ++r) below += max_spike(draw(zero, 0.5, static_cast<std::uint64_t>(r), 42)) <= 1.0 - eta;
  CHECK(std::abs(below / double(n) - cdf) <= 3.0 * std::sqrt(cdf * (1.0 - cdf) / n));
}

TEST_CASE("spike times are uniform within each window, heights follow m^-2") {
  const double eps = 0.3;
  const JumpPath base(0, {4.0}, 10.0);
  std::vector<double> first, second, heights;
  for (std::uint64_t r = 0; r < 1000 && heights.size() < 4000; ++r) {
    const SpikeSet set = draw(base, eps, r, 43);
    for (const Spike& sp : set.spikes()) {
      (sp.t < 4.0 ? first : second).push_back(sp.t);
      heights.push_back(sp.m);
    }
  }
  REQUIRE(first.size() > 100);
  REQUIRE(second.size() > 100);
  CHECK(testsupport::ks_statistic(first, [](double t) { return t / 4.0; }) < testsupport::ks_critical_1pct(first.size()));
  CHECK(testsupport::ks_statistic(second, [](double t) { return (t - 4.0) / 6.0; }) <
        testsupport::ks_critical_1pct(second.size()));
  const auto height_cdf = [eps](double m) { return (1.0 / eps - 1.0 / m) / (1.0 / eps - 1.0); };
  CHECK(testsupport::ks_statistic(heights, height_cdf) < testsupport::ks_critical_1pct(heights.size()));
}

TEST_CASE("counts on the two halves are independent (chi-square)") {
  const JumpPath base = constant_path(0, 10.0);
  const int n = 1000;
  // bins {0-1, 2, 3, 4+} for Poisson(2.6) halves
  auto bin = [](std::size_t c) { return c <= 1 ? 0 : std::min<std::size_t>(c - 1, 3); };
  double table[4][4] = {};
  for (int r = 0; r < n; ++r) {
    std::size_t a = 0, b = 0;
    const SpikeSet set = draw(base, 0.5, static_cast<std::uint64_t>(r), 44);
    for (const Spike& sp : set.spikes()) (sp.t < 5.0 ? a : b) += 1;
    table[bin(a)][bin(b)] += 1.0;
  }
  double rows[4] = {}, cols[4] = {};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      rows[i] += table[i][j];
      cols[j] += table[i][j];
    }
  double chi2 = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double expected = rows[i] * cols[j] / n;
      chi2 += (table[i][j] - expected) * (table[i][j] - expected) / expected;
    }
  CHECK(chi2 < 21.666);  // 1% point of chi-square with 9 degrees of freedom
}

TEST_CASE("limit estimator slices") {
  const JumpPath zero = constant_path(0, 3.0);
  const EstimatorSlices none = limit_estimator_slices(SpikeSet(zero, {}, 0.1));
  for (double t : {0.0, 1.0, 2.9}) CHECK(none.at(t) == EstimatorSlices::Slice::zero);

  CHECK(limit_estimator_slices(SpikeSet(zero, {{1.0, 0.6, SpikeSide::from0}}, 0.1)).at(1.0) ==
        EstimatorSlices::Slice::both);
  const EstimatorSlices low = limit_estimator_slices(SpikeSet(zero, {{1.0, 0.4, SpikeSide::from0}}, 0.1));
  CHECK(low.at(1.0) == EstimatorSlices::Slice::zero);

  const JumpPath jump(0, {1.5}, 3.0);
  const EstimatorSlices js = limit_estimator_slices(SpikeSet(jump, {{2.0, 0.7, SpikeSide::from1}}, 0.1));
  CHECK(js.at(1.5) == EstimatorSlices::Slice::both);
  CHECK(js.at(1.0) == EstimatorSlices::Slice::zero);
  CHECK(js.at(1.7) == EstimatorSlices::Slice::one);
  CHECK(js.at(2.0) == EstimatorSlices::Slice::both);
}

TEST_CASE("spike graph") {
  const JumpPath zero = constant_path(0, 2.0);
  const TimeGrid grid = build_grid(0.0, 2.0, 1e-2);
  const double res = 1e-3;
  const PlanarGraph plain = spike_graph(SpikeSet(zero, {}, 0.1), grid, res);
  CHECK(distance_H(plain, graph_of_cadlag(zero, grid, res)) == 0.0);

  const PlanarGraph one = spike_graph(SpikeSet(zero, {{1.0, 0.6, SpikeSide::from0}}, 0.1), grid, res);
  auto distance_to = [](const PlanarGraph& g, double t, double v) {
    double best = INFINITY;
    for (Eigen::Index i = 0; i < g.points().rows(); ++i)
      best = std::min(best, std::hypot(g.points()(i, 0) - t, g.points()(i, 1) - v));
    return best;
  };
  CHECK(distance_to(one, 1.0, 0.6) <= res);
  CHECK(distance_to(one, 1.0, 0.8) > res);
  CHECK(distance_to(one, 1.0, 0.8) == Approx(0.2).epsilon(0.01));

  const JumpPath jump(0, {1.0}, 2.0);
  const PlanarGraph up = spike_graph(SpikeSet(jump, {{1.5, 0.3, SpikeSide::from1}}, 0.1), grid, res);
  CHECK(distance_to(up, 1.5, 0.7) <= res);
  CHECK(distance_to(up, 1.0, 0.5) <= res);  // full bar at the jump
  CHECK(distance_to(up, 1.5, 0.5) > 0.1);
}

TEST_CASE("adding spikes shorter than eps moves the graph by at most eps") {
  const JumpPath base(0, {3.0}, 5.0);
  const TimeGrid grid = build_grid(0.0, 5.0, 1e-2);
  const double res = 5e-3;
  const double eps = 0.3;
  for (std::uint64_t r = 0; r < 10; ++r) {
    const SpikeSet coarse = draw(base, eps, r, 45);
    const SpikeSet fine_extra = draw(base, 0.05, r, 46);
    std::vector<Spike> merged = coarse.spikes();
    for (const Spike& sp : fine_extra.spikes())
      if (sp.m <= eps) merged.push_back(sp);
    const SpikeSet fine(base, merged, 0.05);
    const PlanarGraph a = spike_graph(coarse, grid, res);
    const PlanarGraph b = spike_graph(fine, grid, res);
    const double d = distance_H(a, b);
    CHECK(d <= eps + res);
    CHECK(d == Approx(testsupport::brute_hausdorff(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("SpikeSet validation") {
  const JumpPath base(0, {1.0}, 2.0);
  CHECK_THROWS_AS(SpikeSet(base, {{0.5, 0.05, SpikeSide::from0}}, 0.1), DomainError);
  CHECK_THROWS_AS(SpikeSet(base, {{0.5, 0.5, SpikeSide::from1}}, 0.1), DomainError);
  CHECK_THROWS_AS(SpikeSet(base, {{1.0, 0.5, SpikeSide::from1}}, 0.1), DomainError);
  CHECK_THROWS_AS(SpikeSet(base, {{2.5, 0.5, SpikeSide::from1}}, 0.1), DomainError);
  CHECK_THROWS_AS(SpikeSet(base, {}, 0.0), DomainError);
  RngStream rng(1);
  CHECK_THROWS_AS(sample_spike_process(base, 1.0, kModel, rng), DomainError);
  CHECK_THROWS_AS(max_spike_cdf(base, 0.0, kModel), DomainError);
}
