#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "wonham/filter.hpp"
#include "wonham/hidden_markov.hpp"
#include "wonham/model.hpp"
#include "wonham/observation.hpp"
#include "wonham/rng.hpp"

namespace testsupport {

using namespace wonham;

/// O(|A| |B|) Hausdorff distance between sampled point sets.
inline double brute_hausdorff(const PlanarGraph& a, const PlanarGraph& b) {
  auto directed = [](const PlanarGraph& from, const PlanarGraph& to) {
    double worst = 0.0;
    const auto& p = from.points();
    const auto& q = to.points();
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      double best = INFINITY;
      for (Eigen::Index j = 0; j < q.rows(); ++j)
        best = std::min(best, std::hypot(p(i, 0) - q(j, 0), p(i, 1) - q(j, 1)));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

/// Kolmogorov-Smirnov statistic of a sample against a continuous CDF.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
inline double ks_critical_1pct(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

struct Simulation {
  JumpPath x;
  TimeGrid grid;
  ObservationIncrements obs;
};

/// Hidden path and observation on [0, horizon]; streams keyed by (cell, replica).
inline Simulation simulate(const ModelParams& model, double horizon, double dt, std::uint64_t seed,
                           std::uint64_t replica, InitialLaw init = InitialLaw::stationary) {
  RngStream chain = substream(seed, 0xC0FFEE, replica, Stream::chain);
  RngStream noise = substream(seed, 0xC0FFEE, replica, Stream::brownian);
  const TimeGrid grid = build_grid(0.0, horizon, dt);
  JumpPath x = sample_jump_path(model, horizon, init, chain);
  ObservationIncrements obs = simulate_observation(x, model, grid, noise);
  return {std::move(x), grid, std::move(obs)};
}

inline SamplePath constant_sample(const TimeGrid& grid, double c) {
  return SamplePath(grid, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(grid.size()), c));
}

}  // namespace testsupport
