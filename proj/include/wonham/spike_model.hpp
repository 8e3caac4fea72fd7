#pragma once

#include <vector>

#include "wonham/model.hpp"
#include "wonham/rng.hpp"

namespace wonham {

enum class SpikeSide { from0, from1 };

struct Spike {
  double t;
  double m;  ///< length in (epsilon_min, 1]
  SpikeSide side;
};

/// Sample of the limiting spike process: the base path decorated with spikes.
class SpikeSet {
 public:
  SpikeSet(JumpPath base, std::vector<Spike> spikes, double epsilon_min);

  const JumpPath& base() const { return base_; }
  const std::vector<Spike>& spikes() const { return spikes_; }
  double epsilon_min() const { return epsilon_min_; }

 private:
  JumpPath base_;
  std::vector<Spike> spikes_;
  double epsilon_min_;
};

/// Poisson sampling with intensity (p 1{x=0} + (1-p) 1{x=1}) lambda dt (x) dm/m^2,
/// truncated to m > epsilon_min. Per constancy window of length L the count is
/// Poisson(weight lambda L (1/eps - 1)), times are uniform inside the window and
/// lengths follow the density m^{-2} / (1/eps - 1) on (eps, 1].
SpikeSet sample_spike_process(const JumpPath& base, double epsilon_min, const ModelParams& model,
                              RngStream& rng);

/// Largest spike length, 0 when there is none.
double max_spike(const SpikeSet& spikes);

/// Closed form P(M* <= 1 - eta | x) = exp(-(lambda eta / (1 - eta)) int_0^H (p 1{x=0} + (1-p) 1{x=1}) dt).
double max_spike_cdf(const JumpPath& base, double eta, const ModelParams& model);

/// Limit of the thresholded estimator: the slice is {0,1} at jump times and at
/// spikes crossing 1/2, and the singleton of the base state elsewhere.
class EstimatorSlices {
 public:
  enum class Slice { zero, one, both };

  EstimatorSlices(JumpPath base, std::vector<double> both_times);

  Slice at(double t) const;
  /// Sorted times where the slice is {0,1}.
  const std::vector<double>& both_times() const { return both_; }

 private:
  JumpPath base_;
  std::vector<double> both_;
};

EstimatorSlices limit_estimator_slices(const SpikeSet& spikes);

/// Base graph plus a bar {t} x [0, m] (from0) or {t} x [1-m, 1] (from1) per spike.
PlanarGraph spike_graph(const SpikeSet& spikes, const TimeGrid& grid, double res);

}  // namespace wonham
