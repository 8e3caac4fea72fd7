#include "wonham/observation.hpp"

namespace wonham {

ObservationIncrements::ObservationIncrements(TimeGrid grid, Eigen::VectorXd dy)
    : grid_(grid), dy_(std::move(dy)) {
  if (static_cast<std::size_t>(dy_.size()) != grid_.steps())
    throw GridMismatch("observation increments must have one entry per step");
}

Eigen::VectorXd brownian_increments(const TimeGrid& grid, RngStream& rng) {
  const double sd = std::sqrt(grid.dt());
  Eigen::VectorXd dB(static_cast<Eigen::Index>(grid.steps()));
  for (Eigen::Index k = 0; k < dB.size(); ++k) dB[k] = sd * rng.normal();
  return dB;
}

ObservationIncrements observation_from_noise(const JumpPath& path, const TimeGrid& grid,
                                             const Eigen::VectorXd& dB, double noise_scale) {
  if (static_cast<std::size_t>(dB.size()) != grid.steps())
    throw GridMismatch("noise length does not match the grid");
  if (grid.end() > path.horizon() + 1e-9 * grid.dt())
    throw DomainError("grid extends beyond the jump path horizon");
  const SamplePath x = sample_on_grid(path, grid);
  const Eigen::Index n = dB.size();
  Eigen::VectorXd dy = x.values().head(n) * grid.dt() + noise_scale * dB;
  return ObservationIncrements(grid, std::move(dy));
}

ObservationIncrements simulate_observation(const JumpPath& path, const ModelParams& model,
                                           const TimeGrid& grid, RngStream& rng,
                                           std::optional<double> noise_scale) {
  const double scale = noise_scale ? *noise_scale : 1.0 / std::sqrt(model.gamma);
  return observation_from_noise(path, grid, brownian_increments(grid, rng), scale);
}

SamplePath observation_levels(const ObservationIncrements& obs) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(obs.grid().size()));
  y[0] = 0.0;
  for (Eigen::Index k = 0; k < obs.dy().size(); ++k) y[k + 1] = y[k] + obs.dy()[k];
  return SamplePath(obs.grid(), std::move(y));
}

Eigen::VectorXd window_average(const ObservationIncrements& obs, double eps, std::size_t& first) {
  const std::size_t w = obs.grid().lag_steps(eps);
  if (w == 0) throw DomainError("window shorter than one time step");
  const Eigen::VectorXd y = observation_levels(obs).values();
  Eigen::VectorXd z = Eigen::VectorXd::Zero(y.size());
  const double width = static_cast<double>(w) * obs.grid().dt();
  for (Eigen::Index k = static_cast<Eigen::Index>(w); k < y.size(); ++k)
    z[k] = (y[k] - y[k - static_cast<Eigen::Index>(w)]) / width;
  first = w;
  return z;
}

}  // namespace wonham
