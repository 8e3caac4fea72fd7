#pragma once

#include <optional>

#include "wonham/model.hpp"
#include "wonham/rng.hpp"

namespace wonham {

/// Grid increments dy_k = x_{t_k} dt + gamma^{-1/2} dB_k of the observation.
class ObservationIncrements {
 public:
  ObservationIncrements(TimeGrid grid, Eigen::VectorXd dy);

  const TimeGrid& grid() const { return grid_; }
  const Eigen::VectorXd& dy() const { return dy_; }
  std::size_t size() const { return static_cast<std::size_t>(dy_.size()); }

 private:
  TimeGrid grid_;
  Eigen::VectorXd dy_;
};

/// n standard Brownian increments, each Normal(0, dt).
Eigen::VectorXd brownian_increments(const TimeGrid& grid, RngStream& rng);

/// Observation built from given Brownian increments; the drift uses the
/// left-endpoint (cadlag) state. `noise_scale` multiplies dB.
ObservationIncrements observation_from_noise(const JumpPath& path, const TimeGrid& grid,
                                             const Eigen::VectorXd& dB, double noise_scale);

/// Observation with noise scale gamma^{-1/2}, or `noise_scale` when given
/// (0 yields the noiseless drift).
ObservationIncrements simulate_observation(const JumpPath& path, const ModelParams& model,
                                           const TimeGrid& grid, RngStream& rng,
                                           std::optional<double> noise_scale = std::nullopt);

/// Levels y_{t_k} = sum_{j<k} dy_j, y_0 = 0. For display only.
SamplePath observation_levels(const ObservationIncrements& obs);

/// Window average z_t = (y_t - y_{t-eps}) / eps at grid points t >= eps.
/// Entries before the first full window are zero; the first valid index is
/// returned in `first`.
Eigen::VectorXd window_average(const ObservationIncrements& obs, double eps, std::size_t& first);

}  // namespace wonham
